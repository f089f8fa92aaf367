#include "fracjensen/operators.hpp"

#include <cmath>
#include <string>

#include "fracjensen/errors.hpp"

namespace fracjensen::ops {
namespace {

void validate(const OperatorRequest& req) {
  if (req.kernel == nullptr) throw ValidationError("operator request has no kernel");
  if (!req.f) throw ValidationError("operator request has no integrand");
  const auto [a, b] = req.interval;
  if (!(a < b)) throw ValidationError("operator interval must satisfy a < b");
  if (!(req.t >= a && req.t <= b))
    throw ValidationError("evaluation point t = " + std::to_string(req.t) +
                          " lies outside [a, b]");
  if (!(req.tol > 0.0)) throw ValidationError("tolerance must be positive");
}

quad::QuadratureResult weighted(const kernels::BoundKernel& kernel, const RealFunction& f,
                                double lo, double hi, double t, Side side, double lambda,
                                double tol) {
  const double sign = side == Side::Right ? -1.0 : 1.0;
  auto integrand = [&](double u) {
    const double delta = sign * u;
    return f(t + delta) * kernel.weight_offset(t, delta);
  };
  return quad::integrate_singular_offset(integrand, hi - lo, lambda, tol);
}

}  // namespace

quad::QuadratureResult frac_integral(const OperatorRequest& req) {
  validate(req);
  const auto [a, b] = req.interval;
  if ((req.side == Side::Right && req.t == a) || (req.side == Side::Left && req.t == b))
    return {0.0, 0.0, 0, true};

  const kernels::BoundKernel kernel(*req.kernel, req.alpha);
  const double lambda = kernel.singular_exponent(std::abs(kernel.g(b) - kernel.g(a)));
  const double lo = req.side == Side::Right ? a : req.t;
  const double hi = req.side == Side::Right ? req.t : b;
  try {
    return weighted(kernel, req.f, lo, hi, req.t, req.side, lambda, req.tol);
  } catch (const DivergentIntegral&) {
    const RealFunction magnitude = [&](double s) { return std::abs(req.f(s)); };
    try {
      weighted(kernel, magnitude, lo, hi, req.t, req.side, lambda, req.tol);
    } catch (const DivergentIntegral& e) {
      throw L1Violation(std::string("f is not in L1_T: ") + e.what());
    }
    throw;
  }
}

quad::QuadratureResult hadamard_integral(const RealFunction& f, double a, double b, Side side,
                                         kernels::Alpha alpha, double t, double tol) {
  if (!(a > 0.0)) throw ValidationError("Hadamard integral requires 0 < a");
  static const kernels::KernelSpec hadamard = kernels::make_hadamard();
  return frac_integral({&hadamard, f, {a, b}, side, alpha, t, tol});
}

double default_derivative_step(double tol) { return std::max(1e-5, std::cbrt(tol)); }

double frac_derivative(const OperatorRequest& req, double h) {
  validate(req);
  const auto order = kernels::Alpha::for_derivative(req.alpha.value());
  if (!(h > 0.0)) throw StepTooLarge("derivative step must be positive");
  const auto [a, b] = req.interval;
  if (!(req.t - h > a && req.t + h < b))
    throw StepTooLarge("derivative stencil [t - h, t + h] leaves (a, b)");

  OperatorRequest shifted = req;
  shifted.alpha = kernels::Alpha(1.0 - order.value());
  shifted.t = req.t + h;
  const double forward = frac_integral(shifted).value;
  shifted.t = req.t - h;
  const double backward = frac_integral(shifted).value;

  const double g_prime = kernels::BoundKernel(*req.kernel, order).g_prime(req.t);
  const double slope = (forward - backward) / (2.0 * h) / g_prime;
  return req.side == Side::Right ? slope : -slope;
}

double frac_derivative(const OperatorRequest& req) {
  return frac_derivative(req, default_derivative_step(req.tol));
}

}  // namespace fracjensen::ops
