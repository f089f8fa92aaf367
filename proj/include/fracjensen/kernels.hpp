#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fracjensen/common.hpp"
#include "fracjensen/quadrature.hpp"

namespace fracjensen::kernels {

/// Fractional order. Real and strictly positive.
class Alpha {
 public:
  explicit Alpha(double value);
  double value() const { return value_; }

  /// Order accepted by derivative operators, which integrate at order 1 - alpha.
  static Alpha for_derivative(double value);

 private:
  double value_;
};

enum class KernelFamily { RiemannLiouville, Hadamard, GWeighted, Custom };

using TwoArgFunction = std::function<double(double x, double alpha)>;

/// The data (g, g', G) that defines T(t, s, alpha) = G(|g(t) - g(s)|, alpha) / g'(s).
struct KernelSpec {
  std::string name;
  KernelFamily family = KernelFamily::Custom;
  RealFunction g;
  RealFunction g_prime;
  TwoArgFunction G;
  /// True when G(x, alpha) = Gamma(alpha) x^(1 - alpha); lets callers read the
  /// singular exponent off directly instead of probing.
  bool power_form = false;
  /// Where g and g' may be sampled.
  double domain_lo = -std::numeric_limits<double>::infinity();
  double domain_hi = std::numeric_limits<double>::infinity();
  /// Non-fatal findings from construction (for instance g not positive).
  std::vector<std::string> warnings;
};

/// Case (A): g(t) = t, G(x, a) = Gamma(a) x^(1-a).
KernelSpec make_riemann_liouville();

/// Case (B): g(t) = log t, g'(s) = 1/s, G(x, a) = Gamma(a) x^(1-a). Sampling at
/// s <= 0 raises DomainError.
KernelSpec make_hadamard();

/// Case (C): user g with derivative g_prime; `working` is the interval on which
/// monotonicity and g' > 0 are spot-checked (64-point grid, ValidationError on
/// failure).
KernelSpec make_g_weighted(RealFunction g, RealFunction g_prime, Interval working);

/// Arbitrary G. Same spot checks as make_g_weighted, plus G > 0 on the grid of
/// x values in (0, g(hi) - g(lo)] for a few orders.
KernelSpec make_custom(RealFunction g, RealFunction g_prime, TwoArgFunction G,
                       Interval working, std::string name = "custom");

/// T(t, s, alpha). Throws SingularKernel when t and s coincide in g and
/// G(0, alpha) = 0; returns +inf when G(0, alpha) is infinite (alpha > 1).
double kernel_T(const KernelSpec& k, double t, double s, Alpha alpha);

/// Kernel with the order fixed; caches Gamma(alpha) for the power form.
class BoundKernel {
 public:
  BoundKernel(const KernelSpec& k, Alpha alpha);

  double G(double x) const;
  double T(double t, double s) const;
  /// 1 / T(t, s): the weight the operators integrate against. Zero when T is
  /// infinite; SingularKernel when T vanishes.
  double weight(double t, double s) const;
  /// weight(t, t + delta), taking |g(t) - g(s)| from delta itself where the
  /// kernel's g allows it (exact for RL, log1p for Hadamard).
  double weight_offset(double t, double delta) const;
  double g(double t) const { return spec_->g(t); }
  double g_prime(double s) const;

  /// Exponent lambda in (0, 1] of the endpoint behaviour x^(lambda - 1) of
  /// 1/G(x) as x -> 0. `scale` is a representative x-range for probing.
  double singular_exponent(double scale) const;

  const KernelSpec& spec() const { return *spec_; }
  double alpha() const { return alpha_; }

 private:
  const KernelSpec* spec_;
  double alpha_;
  double gamma_alpha_;
};

/// Normalizer ∫_c^d ds / T(d, s, alpha), computed as ∫_0^{g(d)-g(c)} dx / G(x, alpha).
/// Throws DivergentIntegral when the graded quadrature does not settle.
quad::QuadratureResult normalizer(const KernelSpec& k, double c, double d, Alpha alpha,
                                  double tol = quad::kDefaultTolerance);

/// Same quantity integrated in s without the substitution (cross-check route).
quad::QuadratureResult normalizer_direct(const KernelSpec& k, double c, double d,
                                         Alpha alpha, double tol = quad::kDefaultTolerance);

}  // namespace fracjensen::kernels
