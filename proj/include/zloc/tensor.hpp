#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zloc {

using Vector = std::vector<double>;

/// Multi-index into a tensor; entries are 0-based inside the library.
using Index = std::vector<std::size_t>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the text parser; line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Dense real tensor of order m and dimension n, stored as n^m doubles in
/// lexicographic index order (first index most significant).
///
/// Immutable after construction apart from set(); the free functions below
/// only read it.
class Tensor {
 public:
  static constexpr std::uint64_t kMaxEntries = 100'000'000;

  /// Zero tensor. Throws DimensionError if order < 2, dim < 2 or dim^order
  /// exceeds kMaxEntries.
  Tensor(std::size_t order, std::size_t dim);
  Tensor(std::size_t order, std::size_t dim, std::vector<double> entries);

  std::size_t order() const noexcept { return order_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size(); }

  double operator()(std::span<const std::size_t> idx) const { return data_[flat(idx)]; }
  double operator()(std::initializer_list<std::size_t> idx) const {
    return data_[flat(std::span<const std::size_t>(idx.begin(), idx.size()))];
  }
  void set(std::span<const std::size_t> idx, double value);

  std::span<const double> entries() const noexcept { return data_; }

  std::size_t flat(std::span<const std::size_t> idx) const;
  Index unflatten(std::size_t flat) const;

  /// a_{i j ... j}: first index i, the remaining m-1 indices all equal j.
  double row_diagonal(std::size_t i, std::size_t j) const;

  double max_abs() const noexcept;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::size_t order_;
  std::size_t dim_;
  std::vector<double> data_;
};

/// Advances idx as an odometer over {0..dim-1}^idx.size(); false on wraparound.
bool next_index(Index& idx, std::size_t dim);

/// Parses the line-oriented tensor text format (1-based indices).
Tensor parse_tensor(std::istream& in);
Tensor parse_tensor(const std::string& text);
Tensor load_tensor(const std::string& path);

/// Emits the text format: nonzero entries in lexicographic order, 17 significant digits.
std::string serialize_tensor(const Tensor& a);

/// (A x^{m-1})_i = sum over (i_2..i_m) of a_{i i_2..i_m} x_{i_2}...x_{i_m}.
Vector contract(const Tensor& a, std::span<const double> x);

/// A x^m.
double polyval(const Tensor& a, std::span<const double> x);

/// Exact gradient of x -> A x^m.
Vector gradient(const Tensor& a, std::span<const double> x);

bool is_nonnegative(const Tensor& a);
bool is_symmetric(const Tensor& a, double tol = 0.0);

struct WeakSymmetryCheck {
  bool weakly_symmetric = false;
  double max_residual = 0.0;  // max over trials of ||grad - m*apply||_inf
  double threshold = 0.0;
  std::uint64_t seed = 0;
  int trials = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Randomized identity test of grad(A x^m) == m A x^{m-1} at points on the unit sphere.
WeakSymmetryCheck check_weak_symmetry(const Tensor& a, int trials = 20, double tol = 1e-9,
                                      std::uint64_t seed = kDefaultSeed);
bool is_weakly_symmetric(const Tensor& a, int trials = 20, double tol = 1e-9,
                         std::uint64_t seed = kDefaultSeed);

/// Average over all index permutations.
Tensor symmetrized(const Tensor& a);

Tensor scaled(const Tensor& a, double s);

}  // namespace zloc
