#include "fracjensen/kernels.hpp"

#include <cmath>
#include <string>

#include "fracjensen/errors.hpp"

namespace fracjensen::kernels {
namespace {

constexpr int kSpotCheckPoints = 64;

double power_G(double x, double alpha, double gamma_alpha) {
  return gamma_alpha * std::pow(x, 1.0 - alpha);
}

void spot_check_g(const RealFunction& g, const RealFunction& g_prime, Interval working,
                  std::vector<std::string>& warnings) {
  if (!working.valid() || !(working.lo < working.hi))
    throw ValidationError("kernel working interval must satisfy lo < hi");
  double previous = g(working.lo);
  bool g_positive = previous > 0.0;
  for (int i = 1; i < kSpotCheckPoints; ++i) {
    const double s = working.lo + working.width() * i / (kSpotCheckPoints - 1);
    const double gs = g(s);
    if (!std::isfinite(gs) || !(gs > previous))
      throw ValidationError("g is not increasing near s = " + std::to_string(s));
    g_positive = g_positive && gs > 0.0;
    previous = gs;
    if (i < kSpotCheckPoints - 1) {
      const double d = g_prime(s);
      if (!std::isfinite(d) || !(d > 0.0))
        throw ValidationError("g' is not positive at s = " + std::to_string(s));
    }
  }
  if (!g_positive) warnings.emplace_back("g is not positive on the working interval");
}

}  // namespace

Alpha::Alpha(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw DomainError("fractional order must be a positive real, got " + std::to_string(value));
}

Alpha Alpha::for_derivative(double value) {
  if (!(value > 0.0 && value < 1.0))
    throw DomainError("derivative order must lie in (0, 1), got " + std::to_string(value));
  return Alpha(value);
}

KernelSpec make_riemann_liouville() {
  KernelSpec k;
  k.name = "rl";
  k.family = KernelFamily::RiemannLiouville;
  k.g = [](double t) { return t; };
  k.g_prime = [](double) { return 1.0; };
  k.G = [](double x, double a) { return power_G(x, a, std::tgamma(a)); };
  k.power_form = true;
  return k;
}

KernelSpec make_hadamard() {
  KernelSpec k;
  k.name = "hadamard";
  k.family = KernelFamily::Hadamard;
  k.g = [](double t) {
    if (!(t > 0.0)) throw DomainError("Hadamard kernel sampled at s <= 0");
    return std::log(t);
  };
  k.g_prime = [](double s) {
    if (!(s > 0.0)) throw DomainError("Hadamard kernel sampled at s <= 0");
    return 1.0 / s;
  };
  k.G = [](double x, double a) { return power_G(x, a, std::tgamma(a)); };
  k.power_form = true;
  k.domain_lo = 0.0;
  return k;
}

KernelSpec make_g_weighted(RealFunction g, RealFunction g_prime, Interval working) {
  KernelSpec k;
  k.name = "gweighted";
  k.family = KernelFamily::GWeighted;
  spot_check_g(g, g_prime, working, k.warnings);
  k.g = std::move(g);
  k.g_prime = std::move(g_prime);
  k.G = [](double x, double a) { return power_G(x, a, std::tgamma(a)); };
  k.power_form = true;
  k.domain_lo = working.lo;
  k.domain_hi = working.hi;
  return k;
}

KernelSpec make_custom(RealFunction g, RealFunction g_prime, TwoArgFunction G, Interval working,
                       std::string name) {
  KernelSpec k;
  k.name = std::move(name);
  k.family = KernelFamily::Custom;
  spot_check_g(g, g_prime, working, k.warnings);
  const double span = g(working.hi) - g(working.lo);
  for (double a : {0.25, 0.5, 0.75, 1.0}) {
    for (int i = 1; i <= kSpotCheckPoints; ++i) {
      const double x = span * i / kSpotCheckPoints;
      const double v = G(x, a);
      if (!std::isfinite(v) || !(v > 0.0))
        throw ValidationError("G is not positive at x = " + std::to_string(x) +
                              ", alpha = " + std::to_string(a));
    }
  }
  k.g = std::move(g);
  k.g_prime = std::move(g_prime);
  k.G = std::move(G);
  k.domain_lo = working.lo;
  k.domain_hi = working.hi;
  return k;
}

BoundKernel::BoundKernel(const KernelSpec& k, Alpha alpha)
    : spec_(&k), alpha_(alpha.value()), gamma_alpha_(std::tgamma(alpha.value())) {}

double BoundKernel::G(double x) const {
  const double v = spec_->power_form ? power_G(x, alpha_, gamma_alpha_) : spec_->G(x, alpha_);
  if (x > 0.0 && !(v > 0.0))
    throw ValidationError("G(x, alpha) must be positive for x > 0 (x = " + std::to_string(x) +
                          ")");
  return v;
}

double BoundKernel::g_prime(double s) const {
  const double d = spec_->g_prime(s);
  if (!std::isfinite(d) || !(d > 0.0))
    throw ValidationError("g'(s) must be positive at every sampled node (s = " +
                          std::to_string(s) + ")");
  return d;
}

double BoundKernel::T(double t, double s) const {
  const double x = std::abs(spec_->g(t) - spec_->g(s));
  const double Gx = G(x);
  if (Gx == 0.0)
    throw SingularKernel("T(t, s) vanishes at t = s = " + std::to_string(s));
  return Gx / g_prime(s);
}

double BoundKernel::weight(double t, double s) const {
  const double x = std::abs(spec_->g(t) - spec_->g(s));
  const double Gx = G(x);
  if (Gx == 0.0)
    throw SingularKernel("T(t, s) vanishes at t = s = " + std::to_string(s));
  if (std::isinf(Gx)) return 0.0;
  return g_prime(s) / Gx;
}

double BoundKernel::weight_offset(double t, double delta) const {
  const double s = t + delta;
  double x;
  switch (spec_->family) {
    case KernelFamily::RiemannLiouville:
      x = std::abs(delta);
      break;
    case KernelFamily::Hadamard:
      if (!(t > 0.0 && s > 0.0)) throw DomainError("Hadamard kernel sampled at s <= 0");
      x = std::abs(std::log1p(delta / t));
      break;
    default:
      return weight(t, s);
  }
  const double Gx = G(x);
  if (Gx == 0.0)
    throw SingularKernel("T(t, s) vanishes at t = s = " + std::to_string(s));
  if (std::isinf(Gx)) return 0.0;
  return g_prime(s) / Gx;
}

double BoundKernel::singular_exponent(double scale) const {
  if (spec_->power_form) return std::min(alpha_, 1.0);
  // Compare G(x)/x^p for p in {0, 1 - alpha} as x -> 0 and keep the flatter one.
  const double scale_abs = std::abs(scale) > 0.0 ? std::abs(scale) : 1.0;
  auto spread = [&](double p) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int j = 1; j <= 4; ++j) {
      const double x = scale_abs * std::pow(10.0, -3.0 * j);
      const double v = std::log(G(x)) - p * std::log(x);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return std::isfinite(hi - lo) ? hi - lo : std::numeric_limits<double>::infinity();
  };
  const double p_power = 1.0 - alpha_;
  const double lambda = spread(p_power) < spread(0.0) ? 1.0 - p_power : 1.0;
  return std::clamp(lambda, 1e-3, 1.0);
}

double kernel_T(const KernelSpec& k, double t, double s, Alpha alpha) {
  return BoundKernel(k, alpha).T(t, s);
}

quad::QuadratureResult normalizer(const KernelSpec& k, double c, double d, Alpha alpha,
                                  double tol) {
  if (!(c < d)) throw DomainError("normalizer requires c < d");
  const BoundKernel bound(k, alpha);
  const double span = bound.g(d) - bound.g(c);
  const double lambda = bound.singular_exponent(span);
  return quad::integrate_endpoint_singular([&](double x) { return 1.0 / bound.G(x); }, 0.0,
                                           span, quad::Endpoint::Left, lambda, tol);
}

quad::QuadratureResult normalizer_direct(const KernelSpec& k, double c, double d, Alpha alpha,
                                         double tol) {
  if (!(c < d)) throw DomainError("normalizer requires c < d");
  const BoundKernel bound(k, alpha);
  const double lambda = bound.singular_exponent(bound.g(d) - bound.g(c));
  return quad::integrate_singular_offset([&](double u) { return bound.weight_offset(d, -u); },
                                         d - c, lambda, tol);
}

}  // namespace fracjensen::kernels
