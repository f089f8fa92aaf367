#include "fracjensen/measure.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "fracjensen/errors.hpp"

namespace fracjensen::jensen {
namespace {

// Expectations of phi(f) routinely carry kinks; start from a fine partition.
const quad::AdaptiveOptions kExpectPanels{5000, 64};
const quad::GradedOptions kExpectGraded{0.15, 40, 1.1, {5000, 64}};

}  // namespace

ProbabilityMeasure ProbabilityMeasure::discrete(std::vector<double> points,
                                                std::vector<double> weights) {
  if (points.empty()) throw ValidationError("discrete measure needs at least one atom");
  if (points.size() != weights.size())
    throw ValidationError("discrete measure: points and weights differ in length");
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw ValidationError("discrete measure: non-finite atom");
    if (!(weights[i] > 0.0)) throw ValidationError("discrete measure: weights must be positive");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("discrete measure: weights sum to " + std::to_string(total) +
                          ", expected 1");

  ProbabilityMeasure mu;
  mu.kind_ = MeasureKind::Discrete;
  mu.support_ = {points.front(), points.front()};
  for (std::size_t i = 0; i < points.size(); ++i) {
    mu.atoms_.push_back({points[i], weights[i]});
    mu.support_.lo = std::min(mu.support_.lo, points[i]);
    mu.support_.hi = std::max(mu.support_.hi, points[i]);
  }
  return mu;
}

ProbabilityMeasure ProbabilityMeasure::uniform_discrete(std::vector<double> points) {
  const double w = points.empty() ? 0.0 : 1.0 / static_cast<double>(points.size());
  std::vector<double> weights(points.size(), w);
  return discrete(std::move(points), std::move(weights));
}

ProbabilityMeasure ProbabilityMeasure::uniform(double c, double d) {
  if (!(c < d)) throw ValidationError("uniform measure requires c < d");
  ProbabilityMeasure mu;
  mu.kind_ = MeasureKind::Density;
  mu.support_ = {c, d};
  mu.weight_ = [](double) { return 1.0; };
  mu.uniform_ = true;
  mu.normalization_ = {d - c, 0.0};
  return mu;
}

ProbabilityMeasure ProbabilityMeasure::density(RealFunction w, double c, double d, double tol) {
  if (!(c < d)) throw ValidationError("density measure requires c < d");
  for (int i = 0; i <= 64; ++i) {
    const double s = c + (d - c) * i / 64.0;
    const double v = w(s);
    if (!std::isfinite(v) || v < 0.0)
      throw ValidationError("density weight must be finite and nonnegative (s = " +
                            std::to_string(s) + ")");
  }
  const auto total = quad::integrate(w, c, d, tol);
  if (!(total.value > 0.0)) throw ValidationError("density weight integrates to zero");

  ProbabilityMeasure mu;
  mu.kind_ = MeasureKind::Density;
  mu.support_ = {c, d};
  mu.weight_ = std::move(w);
  mu.normalization_ = {total.value, total.error_estimate};
  return mu;
}

ProbabilityMeasure ProbabilityMeasure::fractional(
    std::shared_ptr<const kernels::KernelSpec> kernel, double c, double d, kernels::Alpha alpha,
    double tol) {
  if (!kernel) throw ValidationError("fractional measure needs a kernel");
  if (!(c < d)) throw ValidationError("fractional measure requires c < d");
  const auto substituted = kernels::normalizer(*kernel, c, d, alpha, tol);
  const auto direct = kernels::normalizer_direct(*kernel, c, d, alpha, tol);
  const double slack = substituted.error_estimate + direct.error_estimate + tol;
  if (std::abs(substituted.value - direct.value) > slack)
    throw ValidationError("fractional density does not integrate to 1: normalizer routes differ");

  ProbabilityMeasure mu;
  mu.kind_ = MeasureKind::FractionalKernel;
  mu.support_ = {c, d};
  mu.kernel_ = std::move(kernel);
  mu.alpha_ = alpha.value();
  const kernels::BoundKernel bound(*mu.kernel_, alpha);
  mu.lambda_ = bound.singular_exponent(bound.g(d) - bound.g(c));
  mu.normalization_ = {substituted.value, substituted.error_estimate};
  return mu;
}

Estimate ProbabilityMeasure::expect(const RealFunction& h, double tol) const {
  switch (kind_) {
    case MeasureKind::Discrete: {
      double sum = 0.0;
      for (const auto& atom : atoms_) sum += atom.w * h(atom.x);
      return {sum, 0.0};
    }
    case MeasureKind::Density: {
      const double z = normalization_.value;
      const auto r = uniform_ ? quad::integrate(h, support_.lo, support_.hi, tol * z, kExpectPanels)
                              : quad::integrate([&](double s) { return h(s) * weight_(s); },
                                                support_.lo, support_.hi, tol * z, kExpectPanels);
      const double value = r.value / z;
      return {value, r.error_estimate / z + std::abs(value) * normalization_.error / z};
    }
    case MeasureKind::FractionalKernel: {
      const kernels::BoundKernel bound(*kernel_, kernels::Alpha(alpha_));
      const double d = support_.hi;
      const double z = normalization_.value;
      const auto r = quad::integrate_singular_offset(
          [&](double u) { return h(d - u) * bound.weight_offset(d, -u); }, d - support_.lo,
          lambda_, tol * z, kExpectGraded);
      const double value = r.value / z;
      return {value, r.error_estimate / z + std::abs(value) * normalization_.error / z};
    }
  }
  return {};
}

Estimate ProbabilityMeasure::raw_mass(double p, double q, double tol) const {
  if (!(p <= q)) throw DomainError("raw_mass requires p <= q");
  if (p == q) return {0.0, 0.0};
  switch (kind_) {
    case MeasureKind::Discrete:
      throw ValidationError("raw_mass is defined for densities only");
    case MeasureKind::Density: {
      if (uniform_) return {q - p, 0.0};
      const auto r = quad::integrate(weight_, p, q, tol);
      return {r.value, r.error_estimate};
    }
    case MeasureKind::FractionalKernel: {
      const kernels::BoundKernel bound(*kernel_, kernels::Alpha(alpha_));
      const double d = support_.hi;
      const auto w = [&](double s) { return bound.weight(d, s); };
      const auto r = q < d ? quad::integrate(w, p, q, tol)
                           : quad::integrate_singular_offset(
                                 [&](double u) { return bound.weight_offset(d, -u); }, d - p,
                                 lambda_, tol);
      return {r.value, r.error_estimate};
    }
  }
  return {};
}

double ProbabilityMeasure::atom_mass(const std::function<bool(double)>& pred,
                                     const RealFunction& f) const {
  double mass = 0.0;
  for (const auto& atom : atoms_)
    if (pred(f(atom.x))) mass += atom.w;
  return mass;
}

std::vector<double> ProbabilityMeasure::sample_points(int n) const {
  std::vector<double> out;
  if (kind_ == MeasureKind::Discrete) {
    for (const auto& atom : atoms_) out.push_back(atom.x);
    return out;
  }
  n = std::max(n, 2);
  for (int i = 0; i < n; ++i)
    out.push_back(i == n - 1 ? support_.hi : support_.lo + support_.width() * i / (n - 1));
  return out;
}

}  // namespace fracjensen::jensen
