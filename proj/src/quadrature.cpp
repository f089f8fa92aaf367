#include "fracjensen/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fracjensen/errors.hpp"

namespace fracjensen::quad {
namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss weights
// (Gauss nodes are xgk[1], xgk[3], xgk[5], xgk[7]).
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  // Error that still drives refinement; zero once the estimate is at roundoff level.
  double active;
  bool operator<(const Panel& o) const { return active < o.active; }
};

double sample(const RealFunction& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v))
    throw NonFiniteIntegrand("integrand is not finite at x = " + std::to_string(x));
  return v;
}

Panel kronrod15(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = sample(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double absolute = std::abs(fc) * kWgk[7];
  std::array<double, 15> values;
  values[14] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double lo = sample(f, center - dx);
    const double hi = sample(f, center + dx);
    values[2 * j] = lo;
    values[2 * j + 1] = hi;
    kronrod += kWgk[j] * (lo + hi);
    absolute += kWgk[j] * (std::abs(lo) + std::abs(hi));
    if (j % 2 == 1) gauss += kWg[j / 2] * (lo + hi);
  }
  // QUADPACK-style scaling: pessimistic for rough integrands, sharp for smooth.
  const double mean = 0.5 * kronrod;
  double spread = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    spread += kWgk[j] * (std::abs(values[2 * j] - mean) + std::abs(values[2 * j + 1] - mean));
  const double w = std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  spread *= w;
  if (spread != 0.0 && error != 0.0) error = spread * std::min(1.0, std::pow(200.0 * error / spread, 1.5));
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * absolute * w;
  error = std::max(error, roundoff);
  return {a, b, kronrod * half, error, error <= roundoff ? 0.0 : error};
}

}  // namespace

QuadratureResult integrate(const RealFunction& f, double a, double b, double tol,
                           AdaptiveOptions opts) {
  if (!(a < b)) {
    if (a == b) return {0.0, 0.0, 0, true};
    throw DomainError("integrate requires a < b");
  }
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  const std::size_t n0 = std::max<std::size_t>(opts.initial_panels, 1);
  std::vector<Panel> heap;
  double total_error = 0.0;
  for (std::size_t i = 0; i < n0; ++i) {
    const double lo = i == 0 ? a : a + (b - a) * static_cast<double>(i) / n0;
    const double hi = i + 1 == n0 ? b : a + (b - a) * static_cast<double>(i + 1) / n0;
    heap.push_back(kronrod15(f, lo, hi));
    total_error += heap.back().active;
  }
  std::make_heap(heap.begin(), heap.end());
  std::size_t subdivisions = 0;

  while (total_error > tol && heap.front().active > 0.0) {
    if (subdivisions >= opts.max_subdivisions)
      throw MaxSubdivisions("adaptive quadrature hit " + std::to_string(subdivisions) +
                            " subdivisions with error " + std::to_string(total_error));
    std::pop_heap(heap.begin(), heap.end());
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b))
      throw MaxSubdivisions("panel width underflow near x = " + std::to_string(mid));
    total_error -= worst.active;
    for (const Panel& p : {kronrod15(f, worst.a, mid), kronrod15(f, mid, worst.b)}) {
      heap.push_back(p);
      std::push_heap(heap.begin(), heap.end());
      total_error += p.active;
    }
    ++subdivisions;
  }

  double value = 0.0;
  total_error = 0.0;
  for (const auto& p : heap) {
    value += p.value;
    total_error += p.error;
  }
  return {value, total_error, subdivisions, true};
}

QuadratureResult integrate_endpoint_singular(const RealFunction& f, double a, double b,
                                             Endpoint endpoint, double lambda, double tol,
                                             GradedOptions opts) {
  if (!(a < b)) {
    if (a == b) return {0.0, 0.0, 0, true};
    throw DomainError("integrate_endpoint_singular requires a < b");
  }
  const RealFunction g = endpoint == Endpoint::Left
                             ? RealFunction([&](double u) { return f(a + u); })
                             : RealFunction([&](double u) { return f(b - u); });
  return integrate_singular_offset(g, b - a, lambda, tol, opts);
}

QuadratureResult integrate_singular_offset(const RealFunction& g, double length, double lambda,
                                           double tol, GradedOptions opts) {
  if (!(length >= 0.0)) throw DomainError("integrate_singular_offset requires length >= 0");
  if (length == 0.0) return {0.0, 0.0, 0, true};
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw DomainError("singular exponent lambda must lie in (0, 1]");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  const double r = opts.ratio;
  const double q = std::pow(r, lambda);
  const double tail_factor = q / (1.0 - q);
  const double panel_tol = tol / (4.0 * static_cast<double>(opts.max_levels));
  const double negligible = 1e-3 * tol;

  double partial = 0.0;
  double panel_error = 0.0;
  double previous_increment = 0.0;
  double previous_estimate = 0.0;
  std::size_t subdivisions = 0;
  int stalled = 0;

  double outer = length;
  for (std::size_t level = 0; level < opts.max_levels; ++level) {
    const double inner = outer * r;
    quad::AdaptiveOptions level_opts = opts.panel;
    level_opts.initial_panels = static_cast<std::size_t>(
        std::ceil(static_cast<double>(opts.panel.initial_panels) * (outer - inner) / length));
    const auto piece = integrate(g, inner, outer, panel_tol, level_opts);
    outer = inner;
    subdivisions += piece.subdivisions + 1;
    partial += piece.value;
    panel_error += piece.error_estimate;

    const double increment = piece.value;
    if (level > 0) {
      const bool tiny = std::abs(increment) <= negligible;
      if (!tiny && std::abs(previous_increment) < opts.min_contraction * std::abs(increment))
        ++stalled;
      else
        stalled = 0;
      if (stalled >= 3)
        throw DivergentIntegral("graded-mesh increments stopped contracting at level " +
                                std::to_string(level));
    }
    previous_increment = increment;

    const double estimate = partial + increment * tail_factor;
    if (level >= 3) {
      const double err = std::abs(estimate - previous_estimate) + panel_error;
      if (err <= tol) return {estimate, err, subdivisions, true};
    }
    previous_estimate = estimate;
  }
  throw DivergentIntegral("graded-mesh quadrature did not settle within " +
                          std::to_string(opts.max_levels) + " levels");
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn requires x > 0");
  const double v = std::tgamma(x);
  if (!std::isfinite(v)) throw DomainError("gamma_fn overflow");
  return v;
}

double beta_fn(double p, double q) {
  if (!(p > 0.0 && q > 0.0)) throw DomainError("beta_fn requires positive arguments");
  if (p + q < 170.0) return std::tgamma(p) * std::tgamma(q) / std::tgamma(p + q);
  return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q));
}

}  // namespace fracjensen::quad
