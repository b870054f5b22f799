#include "zloc/localization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zloc {

RowAggregates row_aggregates(const Tensor& a) {
  const std::size_t n = a.dim();
  RowAggregates agg;
  agg.dim = n;
  agg.row.assign(n, 0.0);
  agg.with.assign(n * n, 0.0);
  agg.without.assign(n * n, 0.0);

  Index idx(a.order(), 0);
  std::vector<char> seen(n);
  for (double v : a.entries()) {
    const double mag = std::abs(v);
    if (mag != 0.0) {
      const std::size_t i = idx[0];
      agg.row[i] += mag;
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t p = 1; p < idx.size(); ++p) seen[idx[p]] = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (seen[j]) agg.with[i * n + j] += mag;
    }
    next_index(idx, n);
  }
  // Accumulate the complement directly instead of subtracting, so that
  // without_index is exactly zero when no tuple avoids j.
  std::fill(idx.begin(), idx.end(), 0);
  for (double v : a.entries()) {
    const double mag = std::abs(v);
    if (mag != 0.0) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t p = 1; p < idx.size(); ++p) seen[idx[p]] = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (!seen[j]) agg.without[idx[0] * n + j] += mag;
    }
    next_index(idx, n);
  }
  return agg;
}

IntervalSet quadratic_region(double a, double b, double c) {
  if (c < 0.0) throw std::invalid_argument("quadratic_region requires c >= 0");
  const double disc = std::sqrt((a - b) * (a - b) + 4.0 * c);
  const double upper = 0.5 * (a + b + disc);
  if (upper < 0.0) return {};
  // Vieta: the roots multiply to ab - c; avoids cancellation in the smaller root.
  const double lower = upper > 0.0 ? (a * b - c) / upper : 0.0;
  return IntervalSet::single(std::max(0.0, lower), upper);
}

std::string to_string(SetKind kind) {
  switch (kind) {
    case SetKind::K: return "K";
    case SetKind::L: return "L";
    case SetKind::Psi: return "Psi";
    case SetKind::Omega: return "Omega";
  }
  return "?";
}

std::optional<SetKind> set_kind_from_string(const std::string& name) {
  for (SetKind k : {SetKind::K, SetKind::L, SetKind::Psi, SetKind::Omega})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

namespace {

IntervalSet whole_axis_hull(const RowAggregates& agg) {
  const double top = agg.row.empty() ? 0.0 : *std::max_element(agg.row.begin(), agg.row.end());
  return IntervalSet::single(0.0, top);
}

// union over i of (intersection over j != i of region(i, j))
template <typename Region>
std::vector<IntervalSet> brauer_rows(std::size_t n, const IntervalSet& start, Region region) {
  std::vector<IntervalSet> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntervalSet acc = start;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) acc = interval_intersect(acc, region(i, j));
    rows.push_back(std::move(acc));
  }
  return rows;
}

IntervalSet unite(const std::vector<IntervalSet>& rows) {
  IntervalSet out;
  for (const auto& r : rows) out = interval_union(out, r);
  return out;
}

SetReport finish(SetKind kind, std::vector<IntervalSet> rows) {
  SetReport rep;
  rep.kind = kind;
  rep.set = unite(rows);
  rep.radius = interval_sup(rep.set);
  rep.per_index = std::move(rows);
  return rep;
}

}  // namespace

SetReport set_K(const RowAggregates& agg) {
  std::vector<IntervalSet> rows;
  for (double r : agg.row) rows.push_back(IntervalSet::single(0.0, r));
  return finish(SetKind::K, std::move(rows));
}

SetReport set_L(const Tensor& a, const RowAggregates& agg) {
  if (a.dim() != agg.dim) throw DimensionError("aggregates do not belong to this tensor");
  auto rows = brauer_rows(agg.dim, whole_axis_hull(agg), [&](std::size_t i, std::size_t j) {
    const double d = std::abs(a.row_diagonal(i, j));
    return quadratic_region(agg.row[i] - d, 0.0, d * agg.row[j]);
  });
  return finish(SetKind::L, std::move(rows));
}

SetReport set_Psi(const RowAggregates& agg) {
  auto rows = brauer_rows(agg.dim, whole_axis_hull(agg), [&](std::size_t i, std::size_t j) {
    return quadratic_region(agg.without_index(i, j), 0.0, agg.with_index(i, j) * agg.row[j]);
  });
  return finish(SetKind::Psi, std::move(rows));
}

SetReport set_Omega(const RowAggregates& agg) {
  const IntervalSet hull = whole_axis_hull(agg);

  // |z| < without(i,j) and |z| < with(j,j), taken as its closure.
  auto strict = brauer_rows(agg.dim, hull, [&](std::size_t i, std::size_t j) {
    return IntervalSet::single(0.0, std::min(agg.without_index(i, j), agg.with_index(j, j)));
  });

  std::vector<IntervalSet> quad;
  for (std::size_t i = 0; i < agg.dim; ++i) {
    const IntervalSet disk = IntervalSet::single(0.0, agg.row[i]);
    IntervalSet acc = hull;
    for (std::size_t j = 0; j < agg.dim; ++j) {
      if (j == i) continue;
      const IntervalSet region =
          quadratic_region(agg.without_index(i, j), agg.with_index(j, j),
                           agg.with_index(i, j) * agg.without_index(j, j));
      acc = interval_intersect(acc, interval_intersect(region, disk));
    }
    quad.push_back(std::move(acc));
  }

  std::vector<IntervalSet> rows;
  for (std::size_t i = 0; i < agg.dim; ++i) rows.push_back(interval_union(strict[i], quad[i]));

  SetReport rep = finish(SetKind::Omega, std::move(rows));
  rep.families.push_back({"strict", strict, unite(strict)});
  rep.families.push_back({"quadratic", quad, unite(quad)});
  return rep;
}

const SetReport& AllSets::operator[](SetKind kind) const {
  switch (kind) {
    case SetKind::K: return K;
    case SetKind::L: return L;
    case SetKind::Psi: return Psi;
    case SetKind::Omega: return Omega;
  }
  throw std::invalid_argument("unknown set kind");
}

SetReport& AllSets::operator[](SetKind kind) {
  return const_cast<SetReport&>(static_cast<const AllSets&>(*this)[kind]);
}

AllSets all_sets(const Tensor& a) {
  const RowAggregates agg = row_aggregates(a);
  return {set_K(agg), set_L(a, agg), set_Psi(agg), set_Omega(agg)};
}

ChainCheck inclusion_chain_check(const AllSets& sets, double slack) {
  // Ordered innermost first.
  constexpr SetKind chain[] = {SetKind::Omega, SetKind::Psi, SetKind::L, SetKind::K};
  ChainCheck out;
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t q = p + 1; q < 4; ++q) {
      const IntervalSet& inner = sets[chain[p]].set;
      const IntervalSet wide = sets[chain[q]].set.inflated(slack);
      for (const auto& iv : inner.intervals()) {
        if (!interval_subset(IntervalSet::single(iv.lo, iv.hi), wide)) {
          out.holds = false;
          out.violations.push_back({chain[p], chain[q], iv});
        }
      }
    }
  }
  return out;
}

ChainCheck inclusion_chain_check(const Tensor& a, double slack) {
  return inclusion_chain_check(all_sets(a), slack);
}

}  // namespace zloc
