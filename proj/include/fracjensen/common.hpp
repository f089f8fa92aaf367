#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

namespace fracjensen {

/// A real function of one real variable. Implementations must be safe to
/// call concurrently.
using RealFunction = std::function<double(double)>;

/// Closed interval [lo, hi]; lo == hi is allowed (degenerate).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool valid() const { return std::isfinite(lo) && std::isfinite(hi) && lo <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }

  /// Membership with a relative slack that absorbs rounding in computed points.
  bool contains(double x, double rel_slack = 1e-12) const {
    const double pad = rel_slack * std::max({1.0, std::abs(lo), std::abs(hi)});
    return x >= lo - pad && x <= hi + pad;
  }
};

}  // namespace fracjensen
