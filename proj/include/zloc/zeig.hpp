#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zloc/bounds.hpp"
#include "zloc/localization.hpp"
#include "zloc/tensor.hpp"

namespace zloc {

/// Real Z-eigenpair: A x^{m-1} = lambda x with ||x||_2 = 1.
struct ZEigenPair {
  double lambda = 0.0;
  Vector x;
  double residual = 0.0;  // ||A x^{m-1} - lambda x||_2
  std::string source;     // "circle" or "sshopm"
  /// Number of distinct unit eigenvectors merged into this entry (x and -x count separately).
  int multiplicity = 1;
};

double residual(const Tensor& a, double lambda, std::span<const double> x);
inline double residual(const Tensor& a, const ZEigenPair& p) { return residual(a, p.lambda, p.x); }

inline constexpr double kAcceptResidual = 1e-8;

/// Every sign change of the tangential component of A x^{m-1} along the unit
/// circle, refined by bisection. Only defined for n == 2.
std::vector<ZEigenPair> circle_solve(const Tensor& a, int samples = 7200);

struct OracleConfig {
  int starts = 50;
  int max_iter = 2000;
  double tol = 1e-10;            // stop when ||x_{k+1} - x_k|| <= tol
  std::optional<double> shift;   // magnitude; automatic when empty
  std::uint64_t seed = kDefaultSeed;
  double dedupe_tol = 1e-6;      // on lambda
  double angle_tol = 1e-5;       // on eigenvectors, up to sign
  bool polish = true;            // Newton refinement of each power-method limit
};

struct OracleRun {
  std::vector<ZEigenPair> pairs;
  double shift = 0.0;
  int runs = 0;
  int accepted = 0;   // runs whose limit passed the residual test, before dedupe
  int converged = 0;  // runs that met tol within max_iter
  bool weakly_symmetric = false;
};

/// Automatic shift magnitude for the power iteration.
double automatic_shift(const Tensor& a);

/// Shifted symmetric higher-order power method with random restarts, run once
/// with +shift and once with -shift per start.
OracleRun sshopm(const Tensor& a, const OracleConfig& cfg = {});

/// circle_solve for n == 2, sshopm otherwise.
std::vector<ZEigenPair> find_eigenpairs(const Tensor& a, const OracleConfig& cfg = {});

struct VerificationCell {
  std::size_t pair = 0;
  std::string target;  // set name (K, L, Psi, Omega) or bound name (omega_max, zhao, wang, maxR)
  double value = 0.0;  // |lambda|
  double limit = 0.0;  // bound value, or set radius for set targets
  double slack = 0.0;
  bool pass = false;
};

struct Verification {
  std::vector<ZEigenPair> pairs;
  std::vector<VerificationCell> cells;
  bool bounds_checked = false;
  std::optional<ChainCheck> chain;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
};

/// Checks |lambda| of each pair against each set, and against each bound when
/// the bound report says the tensor is nonnegative and weakly symmetric.
Verification verify_inclusion(const Tensor& a, const std::vector<ZEigenPair>& pairs,
                              const AllSets& sets, const BoundReport& bounds,
                              double base_slack = 1e-9);

}  // namespace zloc
