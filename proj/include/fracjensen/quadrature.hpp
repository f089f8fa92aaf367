#pragma once

#include <cstddef>

#include "fracjensen/common.hpp"

namespace fracjensen::quad {

inline constexpr double kDefaultTolerance = 1e-9;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t subdivisions = 0;
  bool converged = false;
};

struct AdaptiveOptions {
  std::size_t max_subdivisions = 5000;
  /// Equal panels to start from. A kink closer to a panel edge than the
  /// outermost node is invisible to the error estimate, so callers expecting
  /// kinks (phi of f with |x| in phi) ask for more.
  std::size_t initial_panels = 1;
};

/// Globally adaptive bisection with a 15-point Gauss-Kronrod rule per panel.
/// The panel error is |K15 - G7|, a deliberately pessimistic bound.
///
/// Throws MaxSubdivisions when the error bound cannot be pushed below `tol`,
/// NonFiniteIntegrand when f returns inf/NaN at a node.
QuadratureResult integrate(const RealFunction& f, double a, double b,
                           double tol = kDefaultTolerance, AdaptiveOptions opts = {});

enum class Endpoint { Left, Right };

struct GradedOptions {
  double ratio = 0.15;      // geometric grading ratio toward the singular endpoint
  std::size_t max_levels = 40;
  double min_contraction = 1.1;
  /// Options for each level; initial_panels counts panels over the whole
  /// length and each level gets its proportional share.
  AdaptiveOptions panel{};
};

/// Integral of f over [a, b] where f ~ (distance to `endpoint`)^(lambda - 1)
/// times a smooth factor, lambda in (0, 1].
///
/// Panels [r^(k+1), r^k] (scaled) are integrated adaptively. The tail below the
/// finest level is closed with the geometric factor r^lambda / (1 - r^lambda),
/// which is exact for a pure power; the error estimate is the last-level change
/// of the closed sum plus the panel errors. Throws DivergentIntegral when the
/// level increments stop contracting by `min_contraction` or the estimate fails
/// to settle within `max_levels`.
/// Same graded scheme with the integrand given as h(u), u the distance from the
/// singular endpoint, over u in (0, length]. Avoids rebuilding u from endpoint
/// minus node, which loses all digits once u is below the endpoint's ulp.
QuadratureResult integrate_singular_offset(const RealFunction& h, double length, double lambda,
                                           double tol = kDefaultTolerance,
                                           GradedOptions opts = {});

QuadratureResult integrate_endpoint_singular(const RealFunction& f, double a, double b,
                                             Endpoint endpoint, double lambda,
                                             double tol = kDefaultTolerance,
                                             GradedOptions opts = {});

/// Gamma function for x > 0 (DomainError otherwise).
double gamma_fn(double x);

/// Beta function B(p, q) = Γ(p)Γ(q)/Γ(p+q), p, q > 0.
double beta_fn(double p, double q);

}  // namespace fracjensen::quad
