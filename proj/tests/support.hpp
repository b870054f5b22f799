// Test fixtures, random generators and brute-force oracles. Nothing here calls
// into the code paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "zloc/tensor.hpp"

namespace zloc::testing {

inline std::string data_path(const std::string& name) { return std::string(ZLOC_DATA_DIR) + "/" + name; }

/// Every index tuple of length m over {0..n-1}, by recursion.
inline void for_each_tuple(std::size_t m, std::size_t n,
                           const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> t;
  std::function<void()> rec = [&] {
    if (t.size() == m) {
      f(t);
      return;
    }
    for (std::size_t k = 0; k < n; ++k) {
      t.push_back(k);
      rec();
      t.pop_back();
    }
  };
  rec();
}

/// Example 1: order 4, dimension 2, symmetric; a_1111=1, a_1112=1, a_1122=0.25, a_2222=5.
inline Tensor example1() {
  Tensor a(4, 2);
  const std::vector<std::pair<std::vector<std::size_t>, double>> reps = {
      {{0, 0, 0, 0}, 1.0}, {{0, 0, 0, 1}, 1.0}, {{0, 0, 1, 1}, 0.25}, {{1, 1, 1, 1}, 5.0}};
  for_each_tuple(4, 2, [&](const std::vector<std::size_t>& t) {
    std::vector<std::size_t> sorted = t;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [rep, v] : reps)
      if (rep == sorted) a.set(t, v);
  });
  return a;
}

/// Example 2: order 3, dimension 3; a_ijk = (row i, column j) of slice k.
inline Tensor example2() {
  const double slices[3][3][3] = {{{3, 3, 0}, {3, 2, 2.5}, {0.5, 2.5, 0}},
                                  {{3, 2, 2}, {2, 0, 3}, {2.5, 3, 1}},
                                  {{1, 3, 0}, {2.5, 3, 1}, {0, 1, 0}}};
  Tensor a(3, 3);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a.set(std::vector<std::size_t>{i, j, k}, slices[k][i][j]);
  return a;
}

inline Tensor random_tensor(std::mt19937_64& rng, std::size_t m, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::size_t count = 1;
  for (std::size_t k = 0; k < m; ++k) count *= n;
  std::vector<double> e(count);
  for (double& v : e) v = u(rng);
  return Tensor(m, n, std::move(e));
}

/// Symmetric by orbit assignment: one uniform draw per sorted index tuple.
inline Tensor random_symmetric(std::mt19937_64& rng, std::size_t m, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Tensor a(m, n);
  std::vector<std::pair<std::vector<std::size_t>, double>> orbit;
  for_each_tuple(m, n, [&](const std::vector<std::size_t>& t) {
    std::vector<std::size_t> s = t;
    std::sort(s.begin(), s.end());
    auto it = std::find_if(orbit.begin(), orbit.end(), [&](const auto& o) { return o.first == s; });
    if (it == orbit.end()) {
      orbit.emplace_back(s, u(rng));
      it = orbit.end() - 1;
    }
    a.set(t, it->second);
  });
  return a;
}

inline std::vector<double> random_point(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

/// (A x^{m-1})_i by explicit enumeration of (m-1)-tuples.
inline std::vector<double> brute_apply(const Tensor& a, const std::vector<double>& x) {
  std::vector<double> out(a.dim(), 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for_each_tuple(a.order() - 1, a.dim(), [&](const std::vector<std::size_t>& tail) {
      std::vector<std::size_t> full{i};
      full.insert(full.end(), tail.begin(), tail.end());
      double prod = a(full);
      for (std::size_t k : tail) prod *= x[k];
      out[i] += prod;
    });
  }
  return out;
}

/// Central finite differences of A x^m, evaluated via brute_apply.
inline std::vector<double> fd_gradient(const Tensor& a, std::vector<double> x, double h = 1e-5) {
  auto f = [&](const std::vector<double>& y) {
    const auto ay = brute_apply(a, y);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * ay[i];
    return s;
  };
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = f(x);
    x[i] = xi - h;
    const double fm = f(x);
    x[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

struct BruteAggregates {
  std::vector<double> row;
  std::vector<std::vector<double>> with, without;
};

/// Row sums and their split by "j appears among positions 2..m", via std::set membership.
inline BruteAggregates brute_aggregates(const Tensor& a) {
  const std::size_t n = a.dim();
  BruteAggregates b{std::vector<double>(n, 0.0), std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)),
                    std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))};
  for (std::size_t i = 0; i < n; ++i) {
    for_each_tuple(a.order() - 1, n, [&](const std::vector<std::size_t>& tail) {
      std::vector<std::size_t> full{i};
      full.insert(full.end(), tail.begin(), tail.end());
      const double v = std::abs(a(full));
      const std::set<std::size_t> present(tail.begin(), tail.end());
      b.row[i] += v;
      for (std::size_t j = 0; j < n; ++j) (present.count(j) ? b.with : b.without)[i][j] += v;
    });
  }
  return b;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double inf_norm(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace zloc::testing
