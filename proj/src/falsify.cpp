#include "fracjensen/falsify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>

#include "fracjensen/errors.hpp"
#include "fracjensen/expr.hpp"
#include "fracjensen/kernels.hpp"
#include "fracjensen/parallel.hpp"

namespace fracjensen::falsify {
namespace {

constexpr double kViolationSlack = -1e-6;
constexpr int kShrinkSteps = 20;

constexpr std::array<std::string_view, 6> kShapes{
    "U", "U^2", "sqrt(U)", "1 - U", "4*U*(1 - U)", "sin(1.5707963267948966*U)",
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) { return uniform(rng, 0.0, 1.0) < p; }

int pick(std::mt19937_64& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

bool is_discrete_op(std::string_view id) {
  return id == "mjensen_discrete" || id == "mercer_discrete" || id == "lemma_transform" ||
         id == "mercer_m_discrete" || id == "mercer_m_endpoints";
}

std::string convex_combination(std::mt19937_64& rng, Interval interval) {
  std::vector<std::string> terms;
  while (terms.empty()) {
    if (chance(rng, 0.6)) terms.push_back(num(uniform(rng, 0.1, 1.0)) + "*x^2");
    if (chance(rng, 0.3)) terms.push_back(num(uniform(rng, 0.05, 0.5)) + "*x^4");
    if (chance(rng, 0.3)) terms.push_back(num(uniform(rng, 0.1, 1.0)) + "*exp(x)");
    if (chance(rng, 0.3)) terms.push_back(num(uniform(rng, 0.1, 1.0)) + "*abs(x)");
    if (chance(rng, 0.3)) {
      const std::string k = num(uniform(rng, interval.lo, interval.hi));
      terms.push_back(num(uniform(rng, 0.1, 1.0)) + "*((x - (" + k + ")) + abs(x - (" + k +
                      ")))/2");
    }
  }
  if (chance(rng, 0.3))
    terms.push_back(num(uniform(rng, -1.0, 1.0)) + "*x + (" + num(uniform(rng, -1.0, 1.0)) + ")");
  std::string out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) out += " + " + terms[i];
  return out;
}

/// Shifts phi so that phi(0) = 0; a convex phi is then m-convex for every m.
std::string anchored_at_zero(const std::string& phi) {
  const double at_zero = expr::parse(phi)(0.0);
  return "(" + phi + ") - (" + num(at_zero) + ")";
}

void random_weights(std::mt19937_64& rng, std::size_t n, std::vector<double>& w) {
  w.resize(n);
  double total = 0.0;
  for (auto& v : w) total += (v = uniform(rng, 0.05, 1.0));
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) partial += (w[i] /= total);
  w[n - 1] = 1.0 - partial;
}

void renormalize(std::vector<double>& w) {
  double total = 0.0;
  for (double v : w) total += v;
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) partial += (w[i] /= total);
  w.back() = 1.0 - partial;
}

const std::shared_ptr<const kernels::KernelSpec>& rl_kernel() {
  static const auto k = std::make_shared<const kernels::KernelSpec>(kernels::make_riemann_liouville());
  return k;
}

std::vector<std::string_view> relaxable_checks(Relaxation r) {
  switch (r) {
    case Relaxation::None: return {};
    case Relaxation::DropConvexity: return {"phi_convex", "phi_m_convex"};
    case Relaxation::DropZeroInI: return {"zero_in_interval"};
    case Relaxation::DropRange: return {"f_range_in_interval"};
  }
  return {};
}

std::vector<Instance> shrink_candidates(std::string_view id, const Instance& in,
                                        Relaxation relaxation) {
  std::vector<Instance> out;
  const bool discrete = is_discrete_op(id) || in.discrete_measure;
  if (discrete && in.points.size() > 1) {
    for (std::size_t i = 0; i < in.points.size(); ++i) {
      Instance c = in;
      c.points.erase(c.points.begin() + static_cast<std::ptrdiff_t>(i));
      c.weights.erase(c.weights.begin() + static_cast<std::ptrdiff_t>(i));
      renormalize(c.weights);
      out.push_back(std::move(c));
    }
  }
  const double w = in.interval.width();
  for (int side = 0; side < 2; ++side) {
    Instance c = in;
    (side == 0 ? c.interval.lo : c.interval.hi) += (side == 0 ? 0.1 : -0.1) * w;
    if (!(c.interval.width() > 1e-9)) continue;
    if (is_discrete_op(id))
      for (double& x : c.points) x = std::clamp(x, c.interval.lo, c.interval.hi);
    if (relaxation != Relaxation::DropRange) {
      c.f_lo = std::clamp(c.f_lo, c.interval.lo, c.interval.hi);
      c.f_hi = std::clamp(c.f_hi, c.interval.lo, c.interval.hi);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Relaxation parse_relaxation(std::string_view text) {
  if (text == "none") return Relaxation::None;
  if (text == "drop_convexity") return Relaxation::DropConvexity;
  if (text == "drop_zero_in_I") return Relaxation::DropZeroInI;
  if (text == "drop_range") return Relaxation::DropRange;
  throw ValidationError("unknown relaxation '" + std::string(text) + "'");
}

std::string_view to_string(Relaxation r) {
  switch (r) {
    case Relaxation::None: return "none";
    case Relaxation::DropConvexity: return "drop_convexity";
    case Relaxation::DropZeroInI: return "drop_zero_in_I";
    case Relaxation::DropRange: return "drop_range";
  }
  return "none";
}

std::string Instance::f_text() const {
  const std::string u = "((x - (" + num(c) + "))/(" + num(d - c) + "))";
  std::string body(kShapes[0]);
  for (auto s : kShapes)
    if (s == shape) body = s;
  std::string expanded;
  for (char ch : body) {
    if (ch == 'U')
      expanded += u;
    else
      expanded += ch;
  }
  return num(f_lo) + " + (" + num(f_hi - f_lo) + ")*(" + expanded + ")";
}

std::string Instance::describe() const {
  std::string out = "phi = " + phi + "\n";
  out += "interval = [" + num(interval.lo) + ", " + num(interval.hi) + "]\n";
  out += "m = " + num(m) + "\n";
  if (!points.empty()) {
    out += "points =";
    for (double p : points) out += " " + num(p);
    out += "\nweights =";
    for (double w : weights) out += " " + num(w);
    out += "\n";
  }
  out += "f = " + f_text() + "\n";
  out += "measure = " + std::string(discrete_measure ? "discrete (points, weights)" : "uniform") +
         " on [" + num(c) + ", " + num(d) + "]\n";
  out += "alpha = " + num(alpha) + "\n";
  if (jump_a != 0.0 || jump_b != 0.0)
    out += "jumps = " + num(jump_a) + " " + num(jump_b) + "\n";
  return out;
}

bool uses_m(std::string_view id) {
  return id == "mjensen_discrete" || id == "mjensen_continuous" || id == "lemma_transform" ||
         id == "mercer_m_discrete" || id == "mercer_m_endpoints" ||
         id == "mercer_m_continuous" || id == "fractional_mercer";
}

Instance generate(std::string_view id, const GeneratorConfig& config, Relaxation relaxation,
                  std::mt19937_64& rng) {
  const auto ids = jensen::inequality_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    throw ValidationError("unknown inequality_id '" + std::string(id) + "'");

  Instance in;
  if (config.m)
    in.m = *config.m;
  else if (uses_m(id))
    in.m = relaxation == Relaxation::DropZeroInI ? uniform(rng, 0.1, 0.9)
           : chance(rng, 0.25)                   ? 1.0
                                                 : uniform(rng, 0.05, 1.0);
  const bool needs_zero = uses_m(id) && in.m < 1.0;

  if (config.interval) {
    in.interval = *config.interval;
  } else if (relaxation == Relaxation::DropZeroInI) {
    in.interval.lo = uniform(rng, 0.2, 2.0);
    in.interval.hi = in.interval.lo + uniform(rng, 0.3, 2.0);
  } else if (needs_zero) {
    in.interval = {-uniform(rng, 0.0, 2.0), uniform(rng, 0.0, 2.0)};
    if (in.interval.width() < 0.2) in.interval.hi = in.interval.lo + 0.2;
  } else {
    in.interval.lo = uniform(rng, -2.0, 1.0);
    in.interval.hi = in.interval.lo + uniform(rng, 0.2, 2.5);
  }
  const Interval I = in.interval;

  const PhiFamily family = config.family.value_or(
      relaxation == Relaxation::DropConvexity ? PhiFamily::Concave : PhiFamily::ConvexCatalog);
  switch (family) {
    case PhiFamily::Fixed:
      in.phi = config.phi;
      break;
    case PhiFamily::ConvexCatalog:
      in.phi = convex_combination(rng, I);
      break;
    case PhiFamily::Concave:
      in.phi = "-(" + convex_combination(rng, I) + ")";
      break;
  }
  if (family != PhiFamily::Fixed && needs_zero && I.contains_zero())
    in.phi = anchored_at_zero(in.phi);

  const int max_points = std::max(config.max_points, 1);
  const auto n = static_cast<std::size_t>(1 + pick(rng, max_points));
  if (is_discrete_op(id)) {
    for (std::size_t i = 0; i < n; ++i) {
      const int roll = pick(rng, 10);
      in.points.push_back(roll == 0 ? I.lo : roll == 1 ? I.hi : uniform(rng, I.lo, I.hi));
    }
    random_weights(rng, n, in.weights);
    return in;
  }

  in.c = uniform(rng, -1.0, 1.0);
  in.d = in.c + uniform(rng, 0.2, 2.0);
  in.shape = kShapes[static_cast<std::size_t>(pick(rng, static_cast<int>(kShapes.size())))];
  if (chance(rng, 0.3)) {
    in.f_lo = I.lo;
    in.f_hi = I.hi;
  } else {
    const double p = uniform(rng, I.lo, I.hi);
    const double q = uniform(rng, I.lo, I.hi);
    in.f_lo = std::min(p, q);
    in.f_hi = std::max(p, q);
  }
  if (relaxation == Relaxation::DropRange) {
    const double spill = uniform(rng, 0.1, 1.0) * std::max(I.width(), 0.1);
    if (chance(rng, 0.5))
      in.f_lo = I.lo - spill;
    else
      in.f_hi = I.hi + spill;
  }

  if (id == "fractional_mercer") {
    in.alpha = chance(rng, 0.2) ? 1.0 : uniform(rng, 0.2, 1.0);
    return in;
  }

  const double discrete_odds = id == "mercer_continuous" ? 0.5 : 0.3;
  if (chance(rng, discrete_odds)) {
    in.discrete_measure = true;
    for (std::size_t i = 0; i < n; ++i) {
      const int roll = pick(rng, 4);
      in.points.push_back(roll == 0 ? in.c : roll == 1 ? in.d : uniform(rng, in.c, in.d));
    }
    random_weights(rng, n, in.weights);
  }
  if (id == "mercer_continuous") {
    if (chance(rng, 0.5)) in.jump_a = uniform(rng, 0.0, 1.0);
    if (chance(rng, 0.5)) in.jump_b = uniform(rng, 0.0, 1.0);
  }
  return in;
}

jensen::InequalityReport evaluate(std::string_view id, const Instance& in,
                                  const jensen::Options& opts) {
  const auto phi_fn = expr::parse(in.phi);
  const RealFunction phi = phi_fn;
  const double a = in.interval.lo;
  const double b = in.interval.hi;

  if (id == "mjensen_discrete")
    return jensen::mjensen_discrete(
        phi, jensen::ProbabilityMeasure::discrete(in.points, in.weights), in.interval, in.m,
        opts);
  if (id == "mercer_discrete") return jensen::mercer_discrete(phi, in.points, in.weights, opts);
  if (id == "lemma_transform")
    return jensen::lemma_transform(phi, in.points, in.interval, in.m, opts).worst;
  if (id == "mercer_m_discrete")
    return jensen::mercer_m_discrete(phi, in.points, in.weights, in.interval, in.m, opts);
  if (id == "mercer_m_endpoints")
    return jensen::mercer_m_endpoints(phi, a, b, in.points, in.weights, in.m, opts);

  const RealFunction f = expr::parse(in.f_text());
  if (id == "fractional_mercer")
    return jensen::fractional_mercer(rl_kernel(), phi, f, in.c, in.d, kernels::Alpha(in.alpha),
                                     a, b, in.m, opts);

  const auto mu = in.discrete_measure
                      ? jensen::ProbabilityMeasure::discrete(in.points, in.weights)
                      : jensen::ProbabilityMeasure::uniform(in.c, in.d);
  if (id == "jensen_classical") return jensen::jensen_classical(phi, f, mu, opts);
  if (id == "mjensen_continuous")
    return jensen::mjensen_continuous(phi, f, mu, in.interval, in.m, opts);
  if (id == "mercer_m_continuous")
    return jensen::mercer_m_continuous(phi, f, mu, a, b, in.m, opts);
  if (id == "mercer_continuous") {
    jensen::EndpointFunction ef{phi, std::nullopt, std::nullopt};
    if (in.jump_a != 0.0) ef.at_a = phi(a) + in.jump_a;
    if (in.jump_b != 0.0) ef.at_b = phi(b) + in.jump_b;
    return jensen::mercer_continuous(ef, f, mu, a, b, opts);
  }
  if (id == "jensen_sandwich") return jensen::jensen_sandwich(phi, f, mu, a, b, opts).summary();
  throw ValidationError("unknown inequality_id '" + std::string(id) + "'");
}

bool is_counterexample(const jensen::InequalityReport& report, Relaxation relaxation) {
  const auto allowed = relaxable_checks(relaxation);
  for (const auto& check : report.hypothesis_checks)
    if (!check.passed && std::find(allowed.begin(), allowed.end(), check.name) == allowed.end())
      return false;
  return report.slack < kViolationSlack || report.argument_in_domain == false;
}

FalsifyResult falsify(std::string_view id, const GeneratorConfig& config, Relaxation relaxation,
                      std::size_t budget, std::uint64_t seed, const jensen::Options& opts) {
  if (budget < 1) throw ValidationError("falsify budget must be at least 1");
  const auto ids = jensen::inequality_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    throw ValidationError("unknown inequality_id '" + std::string(id) + "'");

  std::atomic<std::size_t> best{budget};
  std::mutex hits_mutex;
  std::map<std::size_t, std::pair<Instance, jensen::InequalityReport>> hits;

  parallel_for(budget, [&](std::size_t i) {
    if (i > best.load()) return;
    std::mt19937_64 rng(derive_seed(seed, i));
    const Instance in = generate(id, config, relaxation, rng);
    jensen::InequalityReport report;
    try {
      report = evaluate(id, in, opts);
    } catch (const Error&) {
      return;  // not evaluable; no evidence either way
    }
    if (!is_counterexample(report, relaxation)) return;
    std::lock_guard lock(hits_mutex);
    hits.emplace(i, std::make_pair(in, report));
    if (i < best.load()) best = i;
  });

  FalsifyResult result;
  if (hits.empty()) {
    result.instances_examined = budget;
    return result;
  }
  auto& [index, hit] = *hits.begin();
  Counterexample cx{index, hit.first, hit.second, 0};
  // Shrinking may not give back more than half of the violation.
  const double keep_slack = std::min(kViolationSlack, 0.5 * cx.report.slack);
  const bool by_membership = cx.report.argument_in_domain == false;
  auto still_violates = [&](const jensen::InequalityReport& r) {
    if (!is_counterexample(r, relaxation)) return false;
    return by_membership ? r.argument_in_domain == false : r.slack <= keep_slack;
  };
  while (cx.shrink_steps < kShrinkSteps) {
    bool accepted = false;
    for (auto& candidate : shrink_candidates(id, cx.instance, relaxation)) {
      try {
        auto report = evaluate(id, candidate, opts);
        if (!still_violates(report)) continue;
        cx.instance = std::move(candidate);
        cx.report = std::move(report);
        accepted = true;
        break;
      } catch (const Error&) {
      }
    }
    if (!accepted) break;
    ++cx.shrink_steps;
  }
  result.instances_examined = index + 1;
  result.counterexample = std::move(cx);
  return result;
}

}  // namespace fracjensen::falsify
