#pragma once

#include <memory>
#include <vector>

#include "fracjensen/common.hpp"
#include "fracjensen/kernels.hpp"
#include "fracjensen/quadrature.hpp"

namespace fracjensen::jensen {

enum class MeasureKind { Discrete, Density, FractionalKernel };

struct Atom {
  double x = 0.0;
  double w = 0.0;
};

/// A value computed by quadrature (or exactly, with error 0).
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Probability measure of one of three kinds:
///   - finitely many atoms (x_k, w_k), w_k > 0, sum 1 within 1e-12;
///   - density w(s) / Z on [c, d];
///   - fractional-kernel density s -> 1 / (normalizer * T(d, s, alpha)) on [c, d].
class ProbabilityMeasure {
 public:
  static ProbabilityMeasure discrete(std::vector<double> points, std::vector<double> weights);
  static ProbabilityMeasure uniform_discrete(std::vector<double> points);
  static ProbabilityMeasure uniform(double c, double d);
  /// Normalizes w; ValidationError when w is negative on a sampling grid or
  /// integrates to zero.
  static ProbabilityMeasure density(RealFunction w, double c, double d,
                                    double tol = quad::kDefaultTolerance);
  /// Checks on construction that the substituted and direct normalizer routes
  /// agree within their error estimates (ValidationError otherwise).
  static ProbabilityMeasure fractional(std::shared_ptr<const kernels::KernelSpec> kernel,
                                       double c, double d, kernels::Alpha alpha,
                                       double tol = quad::kDefaultTolerance);

  MeasureKind kind() const { return kind_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  /// [c, d] for densities, the hull of the atoms for discrete measures.
  Interval support() const { return support_; }
  bool uniform_density() const { return uniform_; }
  double alpha() const { return alpha_; }
  const kernels::KernelSpec* kernel() const { return kernel_.get(); }
  /// Z for densities, the kernel normalizer for fractional measures, 1 otherwise.
  Estimate normalization() const { return normalization_; }

  /// ∫ h dμ.
  Estimate expect(const RealFunction& h, double tol = quad::kDefaultTolerance) const;

  /// Unnormalized mass of [p, q] within the support (densities only).
  Estimate raw_mass(double p, double q, double tol = quad::kDefaultTolerance) const;

  /// μ({x : pred(f(x))}) for the atomic part; zero for densities.
  double atom_mass(const std::function<bool(double)>& pred, const RealFunction& f) const;

  /// Points of the support where f gets sampled for range checks.
  std::vector<double> sample_points(int n) const;

 private:
  MeasureKind kind_ = MeasureKind::Discrete;
  std::vector<Atom> atoms_;
  Interval support_;
  RealFunction weight_;
  bool uniform_ = false;
  std::shared_ptr<const kernels::KernelSpec> kernel_;
  double alpha_ = 1.0;
  double lambda_ = 1.0;
  Estimate normalization_{1.0, 0.0};
};

}  // namespace fracjensen::jensen
