#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zloc/interval_set.hpp"
#include "zloc/tensor.hpp"

namespace zloc {

/// Absolute row sums of a tensor and their split by index occurrence.
///
/// For leading index i and the (m-1)-tuple (i_2..i_m):
///   row[i]          = sum of |a_{i i_2..i_m}| over all tuples
///   with_index(i,j) = the part of row[i] from tuples that contain j
///   without_index(i,j) = row[i] - with_index(i,j)
/// The diagonal j == i is populated as well.
struct RowAggregates {
  std::size_t dim = 0;
  std::vector<double> row;
  std::vector<double> with;     // dim x dim, row-major
  std::vector<double> without;  // dim x dim, row-major

  double with_index(std::size_t i, std::size_t j) const { return with[i * dim + j]; }
  double without_index(std::size_t i, std::size_t j) const { return without[i * dim + j]; }
};

RowAggregates row_aggregates(const Tensor& a);

/// {t >= 0 : (t - a)(t - b) <= c}; c must be nonnegative.
IntervalSet quadratic_region(double a, double b, double c);

enum class SetKind { K, L, Psi, Omega };

std::string to_string(SetKind kind);
std::optional<SetKind> set_kind_from_string(const std::string& name);

/// One component of the union in the Omega set, reported separately.
struct SetFamily {
  std::string name;
  std::vector<IntervalSet> per_index;
  IntervalSet set;
};

struct SetReport {
  SetKind kind = SetKind::K;
  IntervalSet set;
  std::optional<double> radius;
  /// For each leading index i, the intersection over j != i of the elementary regions.
  std::vector<IntervalSet> per_index;
  /// Omega only: the "strict" and "quadratic" families whose union is the set.
  std::vector<SetFamily> families;

  std::string name() const { return to_string(kind); }
};

SetReport set_K(const RowAggregates& agg);
SetReport set_L(const Tensor& a, const RowAggregates& agg);
SetReport set_Psi(const RowAggregates& agg);
SetReport set_Omega(const RowAggregates& agg);

struct AllSets {
  SetReport K, L, Psi, Omega;

  const SetReport& operator[](SetKind kind) const;
  SetReport& operator[](SetKind kind);
};

AllSets all_sets(const Tensor& a);

struct ChainViolation {
  SetKind inner;
  SetKind outer;
  Interval offending;  // interval of the inner set not covered by the outer one
};

struct ChainCheck {
  bool holds = true;
  std::vector<ChainViolation> violations;
};

inline constexpr double kChainSlack = 1e-12;

/// Checks Omega <= Psi <= L <= K as interval-set containment.
ChainCheck inclusion_chain_check(const AllSets& sets, double slack = kChainSlack);
ChainCheck inclusion_chain_check(const Tensor& a, double slack = kChainSlack);

}  // namespace zloc
