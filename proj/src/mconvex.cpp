#include "fracjensen/mconvex.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "fracjensen/errors.hpp"

namespace fracjensen::mconvex {
namespace {

void require_m(double m) {
  if (!(m > 0.0 && m <= 1.0)) throw DomainError("m must lie in (0, 1]");
}

void require_inside(Interval interval, double v, const char* what) {
  if (!interval.contains(v))
    throw DomainError(std::string(what) + " = " + std::to_string(v) + " lies outside [" +
                      std::to_string(interval.lo) + ", " + std::to_string(interval.hi) + "]");
}

double clamp_to(Interval interval, double v) { return std::clamp(v, interval.lo, interval.hi); }

double lattice(Interval interval, int i, int n) {
  if (n <= 1) return interval.lo;
  if (i == n - 1) return interval.hi;
  return interval.lo + interval.width() * i / (n - 1);
}

}  // namespace

std::string MConvexityReport::summary() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "m-convexity (m = %.6g) on [%.6g, %.6g]: worst defect %.3e over %zu samples, %s "
                "(empirical evidence, not a proof)",
                m, interval.lo, interval.hi, worst_violation, samples,
                passed() ? "no violation" : "VIOLATED");
  return buf;
}

double check_point(const RealFunction& phi, Interval interval, double x, double y, double t,
                   double m) {
  require_m(m);
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t must lie in [0, 1]");
  require_inside(interval, x, "x");
  require_inside(interval, y, "y");
  const double point = t * x + m * (1.0 - t) * y;
  require_inside(interval, point, "t x + m (1 - t) y");
  return phi(point) - (t * phi(x) + m * (1.0 - t) * phi(y));
}

double check_equivalent_form(const RealFunction& phi, Interval interval, double x, double y,
                             double t, double m) {
  require_m(m);
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t must lie in [0, 1]");
  require_inside(interval, x, "x");
  require_inside(interval, y, "y");
  const double point = m * t * x + (1.0 - t) * y;
  require_inside(interval, point, "m t x + (1 - t) y");
  return phi(point) - (m * t * phi(x) + (1.0 - t) * phi(y));
}

MConvexityReport certify_grid(const RealFunction& phi, Interval interval, double m,
                              GridOptions opts) {
  require_m(m);
  if (!interval.valid()) throw DomainError("invalid interval");
  const bool zero_inside = interval.contains_zero();
  if (m < 1.0 && !zero_inside)
    throw HypothesisError("m < 1 requires 0 in the interval");

  MConvexityReport report;
  report.m = m;
  report.interval = interval;
  report.zero_in_interval = zero_inside;

  double worst = -std::numeric_limits<double>::infinity();
  Triple worst_at;
  auto consider = [&](double x, double y, double t, double phi_x, double phi_y) {
    const double point = clamp_to(interval, t * x + m * (1.0 - t) * y);
    const double defect = phi(point) - (t * phi_x + m * (1.0 - t) * phi_y);
    ++report.samples;
    if (defect > worst) {
      worst = defect;
      worst_at = {x, y, t};
    }
    return defect;
  };

  const int n = std::max(opts.n, 1);
  std::vector<double> nodes(n), values(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = lattice(interval, i, n);
    values[i] = phi(nodes[i]);
  }
  double worst_scaling = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double t = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double defect = consider(nodes[i], nodes[j], t, values[i], values[j]);
        if (k == 0) worst_scaling = std::max(worst_scaling, defect);
      }
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int r = 0; r < opts.random_triples; ++r) {
    const double x = interval.lo + interval.width() * unit(rng);
    const double y = interval.lo + interval.width() * unit(rng);
    const double t = unit(rng);
    consider(x, y, t, phi(x), phi(y));
  }

  report.worst_violation = std::max(worst, 0.0);
  report.worst_scaling_defect = worst_scaling;
  if (report.worst_violation > opts.tolerance) report.witness = worst_at;
  return report;
}

MaxMResult max_m(const RealFunction& phi, Interval interval, int n, double tol) {
  if (!interval.contains_zero()) throw HypothesisError("max_m requires 0 in the interval");
  if (!(tol > 0.0 && tol < 1.0)) throw DomainError("max_m tolerance must lie in (0, 1)");
  GridOptions grid;
  grid.n = n;
  grid.random_triples = 0;
  auto passes = [&](double m) { return certify_grid(phi, interval, m, grid).passed(); };

  if (passes(1.0)) return {1.0, false};
  if (!passes(tol)) return {0.0, true};
  double good = tol;
  double bad = 1.0;
  while (bad - good > tol) {
    const double mid = 0.5 * (good + bad);
    (passes(mid) ? good : bad) = mid;
  }
  return {good, false};
}

}  // namespace fracjensen::mconvex
