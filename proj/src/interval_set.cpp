#include "zloc/interval_set.hpp"

#include <algorithm>
#include <sstream>

namespace zloc {

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& iv) { return !(iv.lo <= iv.hi) || iv.hi < 0.0; });
  for (auto& iv : parts) iv.lo = std::max(iv.lo, 0.0);
  std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });
  for (const auto& iv : parts) {
    if (!parts_.empty() && iv.lo <= parts_.back().hi)
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);
    else
      parts_.push_back(iv);
  }
}

IntervalSet IntervalSet::inflated(double slack) const {
  std::vector<Interval> out = parts_;
  for (auto& iv : out) {
    iv.lo -= slack;
    iv.hi += slack;
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::scaled(double factor) const {
  std::vector<Interval> out = parts_;
  for (auto& iv : out) {
    iv.lo *= factor;
    iv.hi *= factor;
  }
  return IntervalSet(std::move(out));
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::ostringstream os;
  os.precision(6);
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) os << " u ";
    os << '[' << parts_[k].lo << ", " << parts_[k].hi << ']';
  }
  return os.str();
}

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return IntervalSet(std::move(all));
}

IntervalSet interval_intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const double lo = std::max(x[i].lo, y[j].lo);
    const double hi = std::min(x[i].hi, y[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (x[i].hi < y[j].hi)
      ++i;
    else
      ++j;
  }
  return IntervalSet(std::move(out));
}

std::optional<double> interval_sup(const IntervalSet& a) {
  if (a.empty()) return std::nullopt;
  return a.intervals().back().hi;
}

bool interval_contains(const IntervalSet& a, double t, double slack) {
  return std::any_of(a.intervals().begin(), a.intervals().end(), [&](const Interval& iv) {
    return iv.lo - slack <= t && t <= iv.hi + slack;
  });
}

bool interval_subset(const IntervalSet& inner, const IntervalSet& outer, double slack) {
  const IntervalSet wide = outer.inflated(slack);
  return std::all_of(inner.intervals().begin(), inner.intervals().end(), [&](const Interval& iv) {
    return std::any_of(wide.intervals().begin(), wide.intervals().end(),
                       [&](const Interval& w) { return w.lo <= iv.lo && iv.hi <= w.hi; });
  });
}

}  // namespace zloc
