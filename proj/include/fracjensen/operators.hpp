#pragma once

#include "fracjensen/common.hpp"
#include "fracjensen/kernels.hpp"
#include "fracjensen/quadrature.hpp"

namespace fracjensen::ops {

/// Right operator integrates over [a, t] (J_{T,a+}); left over [t, b] (J_{T,b-}).
enum class Side { Right, Left };

struct OperatorRequest {
  const kernels::KernelSpec* kernel = nullptr;
  RealFunction f;
  Interval interval;  // [a, b]
  Side side = Side::Right;
  kernels::Alpha alpha{0.5};
  double t = 0.0;
  double tol = quad::kDefaultTolerance;
};

/// J f(t) = ∫ f(s) / T(t, s, alpha) ds over [a, t] (right) or [t, b] (left).
///
/// Exactly zero on an empty range. The weak singularity sits at s = t and is
/// handed to the graded quadrature with the kernel's singular exponent. When
/// the integral diverges and |f| / T diverges as well, f is not in L1_T and
/// L1Violation is thrown; otherwise DivergentIntegral propagates.
quad::QuadratureResult frac_integral(const OperatorRequest& req);

/// Hadamard integral; same as frac_integral with make_hadamard(). Needs 0 < a.
quad::QuadratureResult hadamard_integral(const RealFunction& f, double a, double b, Side side,
                                         kernels::Alpha alpha, double t,
                                         double tol = quad::kDefaultTolerance);

/// Default derivative step max(1e-5, tol^(1/3)).
double default_derivative_step(double tol);

/// Generalized derivative of order alpha in (0, 1): central difference in t of
/// the order 1 - alpha integral, divided by g'(t), negated on the left side.
///
/// Assumes t -> J^{1-alpha} f(t) is C^1 near t. Throws StepTooLarge when
/// [t - h, t + h] is not inside (a, b).
double frac_derivative(const OperatorRequest& req, double h);
double frac_derivative(const OperatorRequest& req);

}  // namespace fracjensen::ops
