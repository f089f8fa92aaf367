#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fracjensen/common.hpp"
#include "fracjensen/kernels.hpp"
#include "fracjensen/mconvex.hpp"
#include "fracjensen/measure.hpp"

namespace fracjensen::jensen {

enum class Verdict { Holds, Violated, HypothesisFailed };

std::string_view to_string(Verdict v);

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Both sides of one inequality instance and the slack rhs - lhs.
///
/// verdict is Holds iff every hypothesis check passed, the membership claim (if
/// any) held, and slack >= -(tolerance + quadrature_error).
struct InequalityReport {
  std::string inequality_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  std::vector<HypothesisCheck> hypothesis_checks;
  /// The point where phi is evaluated on the left, and whether it stays in the
  /// interval it is supposed to stay in.
  double lhs_argument = 0.0;
  std::optional<bool> argument_in_domain;
  /// Named intermediate quantities (means, normalizer, jumps) for reporting.
  std::vector<std::pair<std::string, double>> terms;
  Verdict verdict = Verdict::Holds;
  double quadrature_error = 0.0;

  bool hypotheses_hold() const;
  const HypothesisCheck* find_check(std::string_view name) const;
};

struct Options {
  double tol = quad::kDefaultTolerance;
  /// Lattice used by the empirical convexity / m-convexity hypothesis checks.
  mconvex::GridOptions grid{};
  /// Sampling density for range checks of f against a density measure.
  int range_samples = 257;
};

InequalityReport jensen_classical(const RealFunction& phi, const RealFunction& f,
                                  const ProbabilityMeasure& mu, const Options& opts = {});

/// mu must be discrete; its atoms are the points x_k. `interval` defaults to
/// the hull of the atoms and 0.
InequalityReport mjensen_discrete(const RealFunction& phi, const ProbabilityMeasure& mu,
                                  std::optional<Interval> interval, double m,
                                  const Options& opts = {});

InequalityReport mjensen_continuous(const RealFunction& phi, const RealFunction& f,
                                    const ProbabilityMeasure& mu,
                                    std::optional<Interval> interval, double m,
                                    const Options& opts = {});

/// Points are sorted internally (stable, weights follow). Throws UnsortedPoints
/// for points that cannot be ordered (NaN).
InequalityReport mercer_discrete(const RealFunction& phi, std::span<const double> points,
                                 std::span<const double> weights, const Options& opts = {});

struct LemmaReport {
  std::vector<double> defects;  // lhs_k - rhs_k, in sorted point order
  InequalityReport worst;       // the k with the largest defect
};

LemmaReport lemma_transform(const RealFunction& phi, std::span<const double> points,
                            std::optional<Interval> interval, double m,
                            const Options& opts = {});

/// `interval` defaults to the hull of the points and 0 (just the points when m = 1).
InequalityReport mercer_m_discrete(const RealFunction& phi, std::span<const double> points,
                                   std::span<const double> weights,
                                   std::optional<Interval> interval, double m,
                                   const Options& opts = {});

InequalityReport mercer_m_endpoints(const RealFunction& phi, double a, double b,
                                    std::span<const double> points,
                                    std::span<const double> weights, double m,
                                    const Options& opts = {});

InequalityReport mercer_m_continuous(const RealFunction& phi, const RealFunction& f,
                                     const ProbabilityMeasure& mu, double a, double b, double m,
                                     const Options& opts = {});

/// A convex function on [a, b] given by its interior expression and optional
/// endpoint values that may sit above the one-sided limits.
struct EndpointFunction {
  RealFunction interior;
  std::optional<double> at_a;
  std::optional<double> at_b;
};

/// Mercer on [a, b] without continuity: phi is replaced by its continuous
/// extension phi*, and the jumps at a and b are charged to the atoms of mu on
/// {f = a} and {f = b}. Densities carry no atoms.
InequalityReport mercer_continuous(const EndpointFunction& phi, const RealFunction& f,
                                   const ProbabilityMeasure& mu, double a, double b,
                                   const Options& opts = {});
InequalityReport mercer_continuous(const RealFunction& phi, const RealFunction& f,
                                   const ProbabilityMeasure& mu, double a, double b,
                                   const Options& opts = {});

/// phi(∫f) <= ∫phi∘f <= phi(a) + phi(b) - phi(a + b - ∫f).
struct SandwichReport {
  double lower = 0.0;
  double middle = 0.0;
  double upper = 0.0;
  double lower_gap = 0.0;  // middle - lower
  double upper_gap = 0.0;  // upper - middle
  std::vector<HypothesisCheck> hypothesis_checks;
  Verdict verdict = Verdict::Holds;
  double quadrature_error = 0.0;

  /// The tighter of the two links as a single report.
  InequalityReport summary() const;
};

SandwichReport jensen_sandwich(const RealFunction& phi, const RealFunction& f,
                               const ProbabilityMeasure& mu, double a, double b,
                               const Options& opts = {});

/// Mercer-type inequality for the fractional-kernel probability density on
/// [c, d]; reduces to mercer_m_continuous with that measure.
InequalityReport fractional_mercer(std::shared_ptr<const kernels::KernelSpec> kernel,
                                   const RealFunction& phi, const RealFunction& f, double c,
                                   double d, kernels::Alpha alpha, double a, double b, double m,
                                   const Options& opts = {});

struct SimpleApproximation {
  std::vector<double> masses;  // mu(E_{n,k}), k = 0 .. 2^n
  double integral = 0.0;       // ∫ f_n dμ
  double error = 0.0;          // quadrature error of the masses, propagated
};

/// Dyadic staircase f_n = Σ (a + k 2^-n (b - a)) χ_{E_{n,k}} with
/// E_{n,k} = {a + k 2^-n (b - a) <= f < a + (k + 1) 2^-n (b - a)}.
/// RangeError if f leaves [a, b].
SimpleApproximation simple_approximation(const RealFunction& f, double a, double b, int n,
                                         const ProbabilityMeasure& mu,
                                         double tol = quad::kDefaultTolerance);

/// Identifiers accepted by evaluate-by-name front ends (CLI, falsifier).
std::span<const std::string_view> inequality_ids();

}  // namespace fracjensen::jensen
