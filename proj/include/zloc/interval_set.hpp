#pragma once

#include <optional>
#include <string>
#include <vector>

namespace zloc {

/// Closed interval [lo, hi] on the radius axis t = |z|.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint closed intervals of [0, inf), kept canonical:
/// sorted ascending, non-empty members, and a strictly positive gap between
/// neighbours (touching intervals are merged exactly, no tolerance).
class IntervalSet {
 public:
  IntervalSet() = default;
  /// Canonicalizes an arbitrary list; intervals with lo > hi are dropped and
  /// negative endpoints are clipped to 0.
  explicit IntervalSet(std::vector<Interval> parts);

  static IntervalSet single(double lo, double hi) { return IntervalSet({{lo, hi}}); }

  const std::vector<Interval>& intervals() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  std::size_t size() const noexcept { return parts_.size(); }

  /// Dilates every interval by slack on both sides (clipped at 0) and re-canonicalizes.
  IntervalSet inflated(double slack) const;
  IntervalSet scaled(double factor) const;

  std::string to_string() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> parts_;
};

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet interval_intersect(const IntervalSet& a, const IntervalSet& b);
std::optional<double> interval_sup(const IntervalSet& a);

/// t lies in a with every interval widened by slack.
bool interval_contains(const IntervalSet& a, double t, double slack = 0.0);

/// Every point of inner lies in outer widened by slack.
bool interval_subset(const IntervalSet& inner, const IntervalSet& outer, double slack = 0.0);

}  // namespace zloc
