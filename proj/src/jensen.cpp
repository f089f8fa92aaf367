#include "fracjensen/jensen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "fracjensen/errors.hpp"

namespace fracjensen::jensen {
namespace {

constexpr std::array<std::string_view, 11> kIds{
    "jensen_classical",   "mjensen_discrete",    "mjensen_continuous", "mercer_discrete",
    "lemma_transform",    "mercer_m_discrete",   "mercer_m_endpoints", "mercer_m_continuous",
    "mercer_continuous",  "jensen_sandwich",     "fractional_mercer",
};

std::string fmt_interval(Interval i) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.6g, %.6g]", i.lo, i.hi);
  return buf;
}

void require_m(double m) {
  if (!(m > 0.0 && m <= 1.0)) throw DomainError("m must lie in (0, 1], got " + std::to_string(m));
}

void require_interval(double a, double b) {
  if (!(std::isfinite(a) && std::isfinite(b) && a <= b))
    throw ValidationError("interval endpoints must satisfy a <= b");
}

struct Sorted {
  std::vector<double> x;
  std::vector<double> w;
};

Sorted sort_points(std::span<const double> points, std::span<const double> weights) {
  if (points.empty()) throw ValidationError("at least one point is required");
  if (points.size() != weights.size())
    throw ValidationError("points and weights differ in length");
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::isnan(points[i])) throw UnsortedPoints("points contain NaN and cannot be ordered");
    if (!std::isfinite(points[i])) throw ValidationError("points must be finite");
    if (!(weights[i] > 0.0)) throw ValidationError("weights must be positive");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("weights sum to " + std::to_string(total) + ", expected 1");

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return points[i] < points[j]; });
  Sorted out;
  for (std::size_t i : order) {
    out.x.push_back(points[i]);
    out.w.push_back(weights[i]);
  }
  return out;
}

void add_check(InequalityReport& r, std::string name, bool passed, std::string detail = {}) {
  r.hypothesis_checks.push_back({std::move(name), passed, std::move(detail)});
}

void check_m_convex(std::vector<HypothesisCheck>& checks, const RealFunction& phi,
                    Interval interval, double m, const Options& opts) {
  const std::string name = m < 1.0 ? "phi_m_convex" : "phi_convex";
  // m-convexity is undefined without 0 in I; zero_in_interval reports that.
  if (m < 1.0 && !interval.contains_zero()) return;
  try {
    const auto rep = mconvex::certify_grid(phi, interval, m, opts.grid);
    checks.push_back({name, rep.passed(), rep.summary()});
  } catch (const HypothesisError& e) {
    checks.push_back({name, false, std::string("not checkable: ") + e.what()});
  } catch (const DomainError& e) {
    checks.push_back({name, false, std::string("phi not evaluable on ") +
                                       fmt_interval(interval) + ": " + e.what()});
  }
}

void check_m_convex(InequalityReport& r, const RealFunction& phi, Interval interval, double m,
                    const Options& opts) {
  check_m_convex(r.hypothesis_checks, phi, interval, m, opts);
}

void check_zero_in(InequalityReport& r, Interval interval, double m) {
  if (m < 1.0)
    add_check(r, "zero_in_interval", interval.contains_zero(),
              "0 in " + fmt_interval(interval) + " (required for m < 1)");
}

Interval range_hull(const RealFunction& f, const ProbabilityMeasure& mu, const Options& opts) {
  const auto pts = mu.sample_points(opts.range_samples);
  Interval hull{f(pts.front()), f(pts.front())};
  for (double s : pts) {
    const double v = f(s);
    hull.lo = std::min(hull.lo, v);
    hull.hi = std::max(hull.hi, v);
  }
  return hull;
}

void check_range(std::vector<HypothesisCheck>& checks, const RealFunction& f,
                 const ProbabilityMeasure& mu, Interval target, const Options& opts) {
  const Interval hull = range_hull(f, mu, opts);
  const bool inside = target.contains(hull.lo) && target.contains(hull.hi);
  checks.push_back({"f_range_in_interval", inside,
                    "sampled range " + fmt_interval(hull) + " within " + fmt_interval(target)});
}

void check_points_in(InequalityReport& r, const std::vector<double>& xs, Interval interval) {
  const bool inside = std::all_of(xs.begin(), xs.end(), [&](double x) { return interval.contains(x); });
  add_check(r, "points_in_interval", inside, "points within " + fmt_interval(interval));
}

/// How far phi(arg) can move when arg is uncertain by err.
double propagated(const RealFunction& phi, double arg, double err) {
  if (!(err > 0.0)) return 0.0;
  const double centre = phi(arg);
  double spread = 0.0;
  for (double probe : {arg - err, arg + err}) {
    try {
      spread = std::max(spread, std::abs(phi(probe) - centre));
    } catch (const DomainError&) {
    }
  }
  return spread;
}

void finish(InequalityReport& r, const Options& opts) {
  r.slack = r.rhs - r.lhs;
  if (!r.hypotheses_hold())
    r.verdict = Verdict::HypothesisFailed;
  else if (r.argument_in_domain == false || r.slack < -(opts.tol + r.quadrature_error))
    r.verdict = Verdict::Violated;
  else
    r.verdict = Verdict::Holds;
}

Verdict combine(bool hypotheses_hold, double slack, double tol, double qerr) {
  if (!hypotheses_hold) return Verdict::HypothesisFailed;
  return slack < -(tol + qerr) ? Verdict::Violated : Verdict::Holds;
}

Interval hull_with_zero(double lo, double hi) { return {std::min(lo, 0.0), std::max(hi, 0.0)}; }

double one_sided_limit(const RealFunction& f, double at, double inward) {
  try {
    const double v = f(at);
    if (std::isfinite(v)) return v;
  } catch (const DomainError&) {
  }
  // Linear extrapolation from inside.
  return 2.0 * f(at + inward) - f(at + 2.0 * inward);
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::HypothesisFailed: return "hypothesis_failed";
  }
  return "unknown";
}

bool InequalityReport::hypotheses_hold() const {
  return std::all_of(hypothesis_checks.begin(), hypothesis_checks.end(),
                     [](const HypothesisCheck& c) { return c.passed; });
}

const HypothesisCheck* InequalityReport::find_check(std::string_view name) const {
  for (const auto& c : hypothesis_checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::span<const std::string_view> inequality_ids() { return kIds; }

InequalityReport jensen_classical(const RealFunction& phi, const RealFunction& f,
                                  const ProbabilityMeasure& mu, const Options& opts) {
  InequalityReport r;
  r.inequality_id = "jensen_classical";
  const auto mean = mu.expect(f, opts.tol);
  const auto mean_phi = mu.expect([&](double x) { return phi(f(x)); }, opts.tol);
  r.lhs_argument = mean.value;
  r.lhs = phi(mean.value);
  r.rhs = mean_phi.value;
  r.quadrature_error = propagated(phi, mean.value, mean.error) + mean_phi.error;
  r.terms = {{"mean_f", mean.value}, {"mean_phi_f", mean_phi.value}};
  check_m_convex(r, phi, range_hull(f, mu, opts), 1.0, opts);
  finish(r, opts);
  return r;
}

InequalityReport mjensen_discrete(const RealFunction& phi, const ProbabilityMeasure& mu,
                                  std::optional<Interval> interval, double m,
                                  const Options& opts) {
  require_m(m);
  if (mu.kind() != MeasureKind::Discrete)
    throw ValidationError("mjensen_discrete needs a discrete measure");
  std::vector<double> xs;
  double mean = 0.0;
  double mean_phi = 0.0;
  for (const auto& atom : mu.atoms()) {
    xs.push_back(atom.x);
    mean += atom.w * atom.x;
    mean_phi += atom.w * phi(atom.x);
  }
  const Interval I = interval.value_or(hull_with_zero(mu.support().lo, mu.support().hi));

  InequalityReport r;
  r.inequality_id = "mjensen_discrete";
  check_zero_in(r, I, m);
  check_points_in(r, xs, I);
  check_m_convex(r, phi, I, m, opts);
  r.lhs_argument = m * mean;
  r.argument_in_domain = I.contains(r.lhs_argument);
  r.lhs = phi(r.lhs_argument);
  r.rhs = m * mean_phi;
  r.terms = {{"mean_x", mean}, {"mean_phi_x", mean_phi}};
  finish(r, opts);
  return r;
}

InequalityReport mjensen_continuous(const RealFunction& phi, const RealFunction& f,
                                    const ProbabilityMeasure& mu,
                                    std::optional<Interval> interval, double m,
                                    const Options& opts) {
  require_m(m);
  const Interval hull = range_hull(f, mu, opts);
  const Interval I = interval.value_or(hull_with_zero(hull.lo, hull.hi));

  InequalityReport r;
  r.inequality_id = "mjensen_continuous";
  check_zero_in(r, I, m);
  check_range(r.hypothesis_checks, f, mu, I, opts);
  check_m_convex(r, phi, I, m, opts);

  const auto mean = mu.expect(f, opts.tol);
  const auto mean_phi = mu.expect([&](double x) { return phi(f(x)); }, opts.tol);
  r.lhs_argument = m * mean.value;
  r.argument_in_domain = I.contains(r.lhs_argument);
  r.lhs = phi(r.lhs_argument);
  r.rhs = m * mean_phi.value;
  r.quadrature_error = propagated(phi, r.lhs_argument, m * mean.error) + m * mean_phi.error;
  r.terms = {{"mean_f", mean.value}, {"mean_phi_f", mean_phi.value}};
  finish(r, opts);
  return r;
}

InequalityReport mercer_discrete(const RealFunction& phi, std::span<const double> points,
                                 std::span<const double> weights, const Options& opts) {
  const Sorted s = sort_points(points, weights);
  const double x1 = s.x.front();
  const double xn = s.x.back();
  double mean = 0.0;
  double mean_phi = 0.0;
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    mean += s.w[k] * s.x[k];
    mean_phi += s.w[k] * phi(s.x[k]);
  }

  InequalityReport r;
  r.inequality_id = "mercer_discrete";
  check_m_convex(r, phi, {x1, xn}, 1.0, opts);
  r.lhs_argument = x1 + xn - mean;
  r.argument_in_domain = Interval{x1, xn}.contains(r.lhs_argument);
  r.lhs = phi(r.lhs_argument);
  r.rhs = phi(x1) + phi(xn) - mean_phi;
  r.terms = {{"mean_x", mean}, {"mean_phi_x", mean_phi}};
  finish(r, opts);
  return r;
}

LemmaReport lemma_transform(const RealFunction& phi, std::span<const double> points,
                            std::optional<Interval> interval, double m, const Options& opts) {
  require_m(m);
  std::vector<double> unit(points.size(), points.empty() ? 0.0 : 1.0 / points.size());
  const Sorted s = sort_points(points, unit);
  const double x1 = s.x.front();
  const double xn = s.x.back();
  const Interval I = interval.value_or(m < 1.0 ? hull_with_zero(x1, xn) : Interval{x1, xn});

  LemmaReport out;
  InequalityReport& r = out.worst;
  r.inequality_id = "lemma_transform";
  check_zero_in(r, I, m);
  check_points_in(r, s.x, I);
  check_m_convex(r, phi, I, m, opts);

  const double phi_x1 = phi(x1);
  const double phi_xn = phi(xn);
  bool inside = true;
  double worst = -std::numeric_limits<double>::infinity();
  for (double xk : s.x) {
    const double y = x1 + m * xn - m * xk;
    inside = inside && I.contains(y) && I.contains(m * xk);
    const double lhs = phi(y);
    const double rhs = phi_x1 + m * phi_xn - phi(m * xk);
    out.defects.push_back(lhs - rhs);
    if (lhs - rhs > worst) {
      worst = lhs - rhs;
      r.lhs = lhs;
      r.rhs = rhs;
      r.lhs_argument = y;
    }
  }
  r.argument_in_domain = inside;
  finish(r, opts);
  return out;
}

InequalityReport mercer_m_discrete(const RealFunction& phi, std::span<const double> points,
                                   std::span<const double> weights,
                                   std::optional<Interval> interval, double m,
                                   const Options& opts) {
  require_m(m);
  const Sorted s = sort_points(points, weights);
  const double x1 = s.x.front();
  const double xn = s.x.back();
  const Interval I = interval.value_or(m < 1.0 ? hull_with_zero(x1, xn) : Interval{x1, xn});

  double mean = 0.0;
  double mean_phi_scaled = 0.0;
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    mean += s.w[k] * s.x[k];
    mean_phi_scaled += s.w[k] * phi(m * s.x[k]);
  }

  InequalityReport r;
  r.inequality_id = "mercer_m_discrete";
  check_zero_in(r, I, m);
  check_points_in(r, s.x, I);
  check_m_convex(r, phi, I, m, opts);
  r.lhs_argument = m * x1 + m * m * xn - m * m * mean;
  r.argument_in_domain = I.contains(r.lhs_argument);
  r.lhs = phi(r.lhs_argument);
  r.rhs = m * phi(x1) + m * m * phi(xn) - m * mean_phi_scaled;
  r.terms = {{"mean_x", mean}, {"mean_phi_mx", mean_phi_scaled}};
  finish(r, opts);
  return r;
}

InequalityReport mercer_m_endpoints(const RealFunction& phi, double a, double b,
                                    std::span<const double> points,
                                    std::span<const double> weights, double m,
                                    const Options& opts) {
  require_m(m);
  require_interval(a, b);
  const Sorted s = sort_points(points, weights);
  const Interval I{a, b};

  double mean = 0.0;
  double mean_phi_scaled = 0.0;
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    mean += s.w[k] * s.x[k];
    mean_phi_scaled += s.w[k] * phi(m * s.x[k]);
  }

  InequalityReport r;
  r.inequality_id = "mercer_m_endpoints";
  check_zero_in(r, I, m);
  check_points_in(r, s.x, I);
  check_m_convex(r, phi, I, m, opts);
  r.lhs_argument = m * a + m * m * b - m * m * mean;
  r.argument_in_domain = I.contains(r.lhs_argument);
  r.lhs = phi(r.lhs_argument);
  r.rhs = m * phi(a) + m * m * phi(b) - m * mean_phi_scaled;
  r.terms = {{"mean_y", mean}, {"mean_phi_my", mean_phi_scaled}};
  finish(r, opts);
  return r;
}

InequalityReport mercer_m_continuous(const RealFunction& phi, const RealFunction& f,
                                     const ProbabilityMeasure& mu, double a, double b, double m,
                                     const Options& opts) {
  require_m(m);
  require_interval(a, b);
  const Interval I{a, b};

  InequalityReport r;
  r.inequality_id = "mercer_m_continuous";
  check_zero_in(r, I, m);
  check_range(r.hypothesis_checks, f, mu, I, opts);
  check_m_convex(r, phi, I, m, opts);

  const auto mean = mu.expect(f, opts.tol);
  const auto mean_phi_scaled = mu.expect([&](double x) { return phi(m * f(x)); }, opts.tol);
  r.lhs_argument = m * a + m * m * b - m * m * mean.value;
  r.argument_in_domain = I.contains(r.lhs_argument);
  r.lhs = phi(r.lhs_argument);
  r.rhs = m * phi(a) + m * m * phi(b) - m * mean_phi_scaled.value;
  r.quadrature_error =
      propagated(phi, r.lhs_argument, m * m * mean.error) + m * mean_phi_scaled.error;
  r.terms = {{"mean_f", mean.value}, {"mean_phi_mf", mean_phi_scaled.value}};
  finish(r, opts);
  return r;
}

InequalityReport mercer_continuous(const EndpointFunction& phi, const RealFunction& f,
                                   const ProbabilityMeasure& mu, double a, double b,
                                   const Options& opts) {
  require_interval(a, b);
  if (!phi.interior) throw ValidationError("mercer_continuous needs an interior function");
  const double inward = a < b ? 1e-7 * (b - a) : 1e-7;
  const double star_a = one_sided_limit(phi.interior, a, inward);
  const double star_b = one_sided_limit(phi.interior, b, -inward);
  const double value_a = phi.at_a.value_or(star_a);
  const double value_b = phi.at_b.value_or(star_b);
  const double jump_a = value_a - star_a;
  const double jump_b = value_b - star_b;

  // phi* is the continuous extension; phi itself differs only at a and b.
  const RealFunction phi_star = [&](double v) {
    if (v == a) return star_a;
    if (v == b) return star_b;
    return phi.interior(v);
  };
  const auto phi_full = [&](double v) {
    if (v == a) return value_a;
    if (v == b) return value_b;
    return phi.interior(v);
  };

  InequalityReport r;
  r.inequality_id = "mercer_continuous";
  check_range(r.hypothesis_checks, f, mu, {a, b}, opts);
  check_m_convex(r, phi_star, {a, b}, 1.0, opts);
  add_check(r, "endpoint_jumps_nonnegative", jump_a >= -opts.tol && jump_b >= -opts.tol,
            "jump at a " + std::to_string(jump_a) + ", jump at b " + std::to_string(jump_b));

  const auto mean = mu.expect(f, opts.tol);
  const auto mean_star = mu.expect([&](double x) { return phi_star(f(x)); }, opts.tol);
  const double atoms_a = mu.atom_mass([&](double v) { return v == a; }, f);
  const double atoms_b = mu.atom_mass([&](double v) { return v == b; }, f);
  const double mean_phi = mean_star.value + jump_a * atoms_a + jump_b * atoms_b;

  if (mean.value == a)
    r.lhs_argument = b;
  else if (mean.value == b)
    r.lhs_argument = a;
  else
    r.lhs_argument = a + b - mean.value;
  r.argument_in_domain = Interval{a, b}.contains(r.lhs_argument);
  r.lhs = phi_full(r.lhs_argument);
  r.rhs = value_a + value_b - mean_phi;
  r.quadrature_error = propagated(phi_star, r.lhs_argument, mean.error) + mean_star.error;
  r.terms = {{"mean_f", mean.value},   {"mean_phi_star_f", mean_star.value},
             {"mean_phi_f", mean_phi}, {"jump_a", jump_a},
             {"jump_b", jump_b},       {"mass_f_eq_a", atoms_a},
             {"mass_f_eq_b", atoms_b}};
  finish(r, opts);
  return r;
}

InequalityReport mercer_continuous(const RealFunction& phi, const RealFunction& f,
                                   const ProbabilityMeasure& mu, double a, double b,
                                   const Options& opts) {
  return mercer_continuous(EndpointFunction{phi, std::nullopt, std::nullopt}, f, mu, a, b, opts);
}

InequalityReport SandwichReport::summary() const {
  InequalityReport r;
  r.inequality_id = "jensen_sandwich";
  if (lower_gap <= upper_gap) {
    r.lhs = lower;
    r.rhs = middle;
  } else {
    r.lhs = middle;
    r.rhs = upper;
  }
  r.slack = r.rhs - r.lhs;
  r.hypothesis_checks = hypothesis_checks;
  r.terms = {{"lower", lower}, {"middle", middle}, {"upper", upper},
             {"lower_gap", lower_gap}, {"upper_gap", upper_gap}};
  r.verdict = verdict;
  r.quadrature_error = quadrature_error;
  return r;
}

SandwichReport jensen_sandwich(const RealFunction& phi, const RealFunction& f,
                               const ProbabilityMeasure& mu, double a, double b,
                               const Options& opts) {
  require_interval(a, b);
  SandwichReport out;
  check_range(out.hypothesis_checks, f, mu, {a, b}, opts);
  check_m_convex(out.hypothesis_checks, phi, {a, b}, 1.0, opts);

  const auto mean = mu.expect(f, opts.tol);
  const auto mean_phi = mu.expect([&](double x) { return phi(f(x)); }, opts.tol);
  const double reflected = a + b - mean.value;
  out.lower = phi(mean.value);
  out.middle = mean_phi.value;
  out.upper = phi(a) + phi(b) - phi(reflected);
  out.lower_gap = out.middle - out.lower;
  out.upper_gap = out.upper - out.middle;
  out.quadrature_error = propagated(phi, mean.value, mean.error) +
                         propagated(phi, reflected, mean.error) + mean_phi.error;

  const bool hold = std::all_of(out.hypothesis_checks.begin(), out.hypothesis_checks.end(),
                                [](const HypothesisCheck& c) { return c.passed; });
  out.verdict = combine(hold, std::min(out.lower_gap, out.upper_gap), opts.tol,
                        out.quadrature_error);
  return out;
}

InequalityReport fractional_mercer(std::shared_ptr<const kernels::KernelSpec> kernel,
                                   const RealFunction& phi, const RealFunction& f, double c,
                                   double d, kernels::Alpha alpha, double a, double b, double m,
                                   const Options& opts) {
  const auto mu = ProbabilityMeasure::fractional(std::move(kernel), c, d, alpha, opts.tol);
  InequalityReport r = mercer_m_continuous(phi, f, mu, a, b, m, opts);
  r.inequality_id = "fractional_mercer";
  r.terms.emplace_back("normalizer", mu.normalization().value);
  return r;
}

SimpleApproximation simple_approximation(const RealFunction& f, double a, double b, int n,
                                         const ProbabilityMeasure& mu, double tol) {
  if (!(a < b)) throw DomainError("simple_approximation requires a < b");
  if (n < 0 || n > 24) throw DomainError("simple_approximation level must lie in [0, 24]");
  const std::size_t top = std::size_t{1} << n;
  const double step = (b - a) / static_cast<double>(top);
  const Interval range{a, b};

  auto level = [&](std::size_t k) { return a + static_cast<double>(k) * step; };
  auto bin = [&](double v) -> std::size_t {
    if (!range.contains(v))
      throw RangeError("f = " + std::to_string(v) + " leaves " + fmt_interval(range));
    v = std::clamp(v, a, b);
    auto k = static_cast<std::size_t>(std::clamp(std::floor((v - a) / step), 0.0,
                                                 static_cast<double>(top)));
    while (k < top && level(k + 1) <= v) ++k;
    while (k > 0 && level(k) > v) --k;
    return k;
  };

  SimpleApproximation out;
  out.masses.assign(top + 1, 0.0);

  if (mu.kind() == MeasureKind::Discrete) {
    for (const auto& atom : mu.atoms()) out.masses[bin(f(atom.x))] += atom.w;
  } else {
    // Split the support where f crosses a level; locate crossings by bisection.
    struct Piece {
      double p, q;
      std::size_t k;
    };
    std::vector<Piece> pieces;
    const auto [c, d] = mu.support();
    const double eps = 1e-13 * std::max({1.0, std::abs(c), std::abs(d)});
    auto emit = [&](double p, double q, std::size_t k) {
      if (!pieces.empty() && pieces.back().k == k)
        pieces.back().q = q;
      else
        pieces.push_back({p, q, k});
    };
    auto refine = [&](auto&& self, double p, double q, std::size_t kp, std::size_t kq) -> void {
      if (kp == kq) return emit(p, q, kp);
      const double mid = 0.5 * (p + q);
      if (q - p <= eps || !(p < mid && mid < q)) {
        emit(p, mid, kp);
        return emit(mid, q, kq);
      }
      const std::size_t km = bin(f(mid));
      self(self, p, mid, kp, km);
      self(self, mid, q, km, kq);
    };
    constexpr int kCells = 256;
    double p = c;
    std::size_t kp = bin(f(c));
    for (int i = 1; i <= kCells; ++i) {
      const double q = i == kCells ? d : c + (d - c) * i / kCells;
      const std::size_t kq = bin(f(q));
      refine(refine, p, q, kp, kq);
      p = q;
      kp = kq;
    }

    double total = 0.0;
    double raw_error = 0.0;
    std::vector<double> raw(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto m = mu.raw_mass(pieces[i].p, pieces[i].q, tol);
      raw[i] = m.value;
      raw_error += m.error;
      total += m.value;
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) out.masses[pieces[i].k] += raw[i] / total;
    // Crossing location uncertainty plus quadrature error of the masses.
    const double density_scale = mu.uniform_density() ? 1.0 / (d - c) : 0.0;
    out.error = (2.0 * raw_error / total + static_cast<double>(pieces.size()) * eps * density_scale) *
                std::max(std::abs(a), std::abs(b));
  }

  for (std::size_t k = 0; k <= top; ++k) out.integral += level(k) * out.masses[k];
  return out;
}

}  // namespace fracjensen::jensen
