#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fracjensen/common.hpp"

namespace fracjensen::mconvex {

/// Defect above which a sampled triple counts as a violation.
inline constexpr double kViolationTolerance = 1e-9;

struct Triple {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

/// Empirical m-convexity evidence. A clean report is evidence, not a proof.
struct MConvexityReport {
  double m = 1.0;
  Interval interval;
  bool zero_in_interval = false;
  double worst_violation = 0.0;          // max defect, clamped below at 0
  std::optional<Triple> witness;         // present iff worst_violation > tolerance
  double worst_scaling_defect = 0.0;     // max of phi(m y) - m phi(y) over the lattice
  std::size_t samples = 0;
  bool is_proof = false;

  bool passed() const { return !witness.has_value(); }
  std::string summary() const;
};

/// phi(t x + m (1 - t) y) - [t phi(x) + m (1 - t) phi(y)]; <= 0 where the
/// inequality holds. DomainError when the combined point leaves `interval`.
double check_point(const RealFunction& phi, Interval interval, double x, double y, double t,
                   double m);

/// phi(m t x + (1 - t) y) - [m t phi(x) + (1 - t) phi(y)], the equivalent form.
double check_equivalent_form(const RealFunction& phi, Interval interval, double x, double y,
                             double t, double m);

struct GridOptions {
  int n = 33;                  // lattice points per axis (x, y, t)
  int random_triples = 10000;
  std::uint64_t seed = 42;
  double tolerance = kViolationTolerance;
};

/// Max defect over an n^3 lattice of (x, y, t) plus seeded random triples.
/// Deterministic given the seed. HypothesisError when m < 1 and 0 is not in
/// the interval.
MConvexityReport certify_grid(const RealFunction& phi, Interval interval, double m,
                              GridOptions opts = {});

struct MaxMResult {
  double m = 0.0;
  bool returns_zero = false;   // phi failed for every tested m >= tol
};

/// Largest m (to width tol) for which certify_grid passes on an n-lattice.
/// Requires 0 in the interval.
MaxMResult max_m(const RealFunction& phi, Interval interval, int n = 33, double tol = 1e-3);

}  // namespace fracjensen::mconvex
