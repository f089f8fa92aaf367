#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fracjensen/common.hpp"
#include "fracjensen/jensen.hpp"

namespace fracjensen::falsify {

/// Which hypothesis the generator is allowed to break.
enum class Relaxation { None, DropConvexity, DropZeroInI, DropRange };

Relaxation parse_relaxation(std::string_view text);
std::string_view to_string(Relaxation r);

enum class PhiFamily {
  ConvexCatalog,  // positive combinations of x^2, x^4, exp(x), |x|, max(x - k, 0), affine
  Concave,        // negated convex combinations
  Fixed,          // GeneratorConfig::phi verbatim
};

struct GeneratorConfig {
  /// Defaults to ConvexCatalog, or Concave under DropConvexity.
  std::optional<PhiFamily> family;
  std::string phi;                   // used when family is Fixed
  std::optional<double> m;           // random in (0, 1] when absent
  std::optional<Interval> interval;  // random when absent
  int max_points = 6;
};

/// One randomly generated inequality instance. Fields not used by a given
/// inequality are ignored by evaluate().
struct Instance {
  std::string phi;
  double jump_a = 0.0;  // endpoint jumps for mercer_continuous
  double jump_b = 0.0;
  /// Points for the discrete inequalities; atoms of mu when discrete_measure.
  std::vector<double> points;
  std::vector<double> weights;
  Interval interval;  // I, or [a, b]
  double m = 1.0;
  bool discrete_measure = false;
  double c = 0.0;  // support of mu
  double d = 1.0;
  std::string shape = "u";  // f = f_lo + (f_hi - f_lo) * shape(u), u = (x - c) / (d - c)
  double f_lo = 0.0;
  double f_hi = 1.0;
  double alpha = 1.0;  // fractional_mercer, Riemann-Liouville kernel

  std::string f_text() const;
  std::string describe() const;
};

bool uses_m(std::string_view inequality_id);

/// ValidationError for an unknown id.
Instance generate(std::string_view inequality_id, const GeneratorConfig& config,
                  Relaxation relaxation, std::mt19937_64& rng);

/// Evaluates the inequality on the instance. lemma_transform reports its worst k.
jensen::InequalityReport evaluate(std::string_view inequality_id, const Instance& instance,
                                  const jensen::Options& opts = {});

/// A counterexample: slack below -1e-6 or a failed membership claim, with every
/// failed hypothesis check covered by the relaxation.
bool is_counterexample(const jensen::InequalityReport& report, Relaxation relaxation);

struct Counterexample {
  std::size_t instance_index = 0;
  Instance instance;
  jensen::InequalityReport report;
  int shrink_steps = 0;
};

struct FalsifyResult {
  std::optional<Counterexample> counterexample;
  std::size_t instances_examined = 0;  // index of the hit + 1, or the budget
};

/// Samples `budget` seeded instances, keeps the lowest-index counterexample and
/// shrinks it (up to 20 accepted steps). Deterministic for a given seed.
FalsifyResult falsify(std::string_view inequality_id, const GeneratorConfig& config,
                      Relaxation relaxation, std::size_t budget, std::uint64_t seed,
                      const jensen::Options& opts = {});

}  // namespace fracjensen::falsify
