#pragma once

#include <optional>
#include <stdexcept>

#include "zloc/localization.hpp"
#include "zloc/tensor.hpp"

namespace zloc {

/// A max-over-i / min-over-j bound together with the indices that realize it.
/// Ties go to the smallest index.
struct BoundValue {
  double value = 0.0;
  std::size_t row = 0;                // argmax i
  std::optional<std::size_t> column;  // argmin j for that row, when the bound has one
};

BoundValue bound_maxR(const RowAggregates& agg);
BoundValue bound_wang(const Tensor& a, const RowAggregates& agg);
BoundValue bound_zhao(const RowAggregates& agg);

struct OmegaBound {
  BoundValue value;   // max of the two parts below
  BoundValue strict;  // max_i min_{j!=i} min(without(i,j), with(j,j))
  BoundValue quad;    // max_i min_{j!=i} min(R_i, upper root of the (i,j) quadratic)
};

OmegaBound bound_omega(const RowAggregates& agg);

/// Upper root of (t - without(i,j))(t - with(j,j)) = with(i,j) * without(j,j).
double omega_pair_root(const RowAggregates& agg, std::size_t i, std::size_t j);

/// Raised when the bound ordering fails on a nonnegative tensor; this can only
/// mean a defect in the bound code, never bad input.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct BoundReport {
  OmegaBound omega;
  BoundValue zhao;
  BoundValue wang;
  BoundValue maxR;
  bool nonnegative = false;
  WeakSymmetryCheck weak_symmetry;

  /// The upper-bound interpretation for the Z-spectral radius needs both flags.
  bool applicable() const { return nonnegative && weak_symmetry.weakly_symmetric; }
};

/// Slack used when asserting omega <= zhao <= wang <= maxR.
double chain_slack(double maxR);

BoundReport bound_report(const Tensor& a, std::uint64_t seed = kDefaultSeed);

}  // namespace zloc
