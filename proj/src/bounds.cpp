#include "zloc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace zloc {

namespace {

// max over i of min over j != i of term(i, j), with smallest-index tie breaking.
template <typename Term>
BoundValue max_min(std::size_t n, Term term) {
  BoundValue best;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double row_min = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double v = term(i, j);
      if (v < row_min) {
        row_min = v;
        arg = j;
      }
    }
    if (row_min > best.value) {
      best.value = row_min;
      best.row = i;
      best.column = arg;
    }
  }
  return best;
}

// Larger root of t^2 - p t - q = 0. q can be negative for tensors with negative
// a_{ij..j}; the discriminant is clamped so the value stays finite.
double upper_root(double p, double q) {
  return 0.5 * (p + std::sqrt(std::max(0.0, p * p + 4.0 * q)));
}

}  // namespace

BoundValue bound_maxR(const RowAggregates& agg) {
  BoundValue best;
  for (std::size_t i = 0; i < agg.row.size(); ++i)
    if (agg.row[i] > best.value || i == 0) {
      best.value = agg.row[i];
      best.row = i;
    }
  return best;
}

BoundValue bound_wang(const Tensor& a, const RowAggregates& agg) {
  return max_min(agg.dim, [&](std::size_t i, std::size_t j) {
    const double d = a.row_diagonal(i, j);
    return upper_root(agg.row[i] - d, d * agg.row[j]);
  });
}

BoundValue bound_zhao(const RowAggregates& agg) {
  return max_min(agg.dim, [&](std::size_t i, std::size_t j) {
    return upper_root(agg.without_index(i, j), agg.with_index(i, j) * agg.row[j]);
  });
}

double omega_pair_root(const RowAggregates& agg, std::size_t i, std::size_t j) {
  const double p = agg.without_index(i, j);
  const double q = agg.with_index(j, j);
  const double c = agg.with_index(i, j) * agg.without_index(j, j);
  return 0.5 * (p + q + std::sqrt((p - q) * (p - q) + 4.0 * c));
}

OmegaBound bound_omega(const RowAggregates& agg) {
  OmegaBound out;
  out.strict = max_min(agg.dim, [&](std::size_t i, std::size_t j) {
    return std::min(agg.without_index(i, j), agg.with_index(j, j));
  });
  out.quad = max_min(agg.dim, [&](std::size_t i, std::size_t j) {
    return std::min(agg.row[i], omega_pair_root(agg, i, j));
  });
  out.value = out.quad.value >= out.strict.value ? out.quad : out.strict;
  return out;
}

double chain_slack(double maxR) { return 1e-12 * (1.0 + maxR); }

BoundReport bound_report(const Tensor& a, std::uint64_t seed) {
  const RowAggregates agg = row_aggregates(a);
  BoundReport rep;
  rep.omega = bound_omega(agg);
  rep.zhao = bound_zhao(agg);
  rep.wang = bound_wang(a, agg);
  rep.maxR = bound_maxR(agg);
  rep.nonnegative = is_nonnegative(a);
  rep.weak_symmetry = check_weak_symmetry(a, 20, 1e-9, seed);

  if (rep.nonnegative) {
    const double slack = chain_slack(rep.maxR.value);
    const double chain[] = {rep.omega.value.value, rep.zhao.value, rep.wang.value, rep.maxR.value};
    for (int k = 0; k < 3; ++k) {
      if (chain[k] > chain[k + 1] + slack) {
        std::ostringstream os;
        os.precision(17);
        os << "bound ordering violated at position " << k << ": " << chain[k] << " > "
           << chain[k + 1];
        throw InternalInconsistency(os.str());
      }
    }
  }
  return rep;
}

}  // namespace zloc
