#include "doctest.h"
#include "support.hpp"
#include "zloc/localization.hpp"

using namespace zloc;
using namespace zloc::testing;

namespace {

// Membership of t = |z| read straight off the defining inequalities, using the
// brute-force aggregates. Returns nullopt when t sits within eps of a boundary.
struct PointOracle {
  const Tensor& a;
  BruteAggregates b;
  double eps;

  explicit PointOracle(const Tensor& t, double e = 1e-9) : a(t), b(brute_aggregates(t)), eps(e) {}

  // Evaluates "exists i, for all j != i: g(i, j) <= 0", where g is a margin function.
  template <typename Margin>
  std::optional<bool> brauer(Margin g) const {
    const std::size_t n = a.dim();
    bool any = false, ambiguous = false;
    for (std::size_t i = 0; i < n; ++i) {
      bool all = true, near = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double v = g(i, j);
        if (std::abs(v) <= eps) near = true;
        if (v > 0) all = false;
      }
      any = any || all;
      ambiguous = ambiguous || near;
    }
    if (ambiguous) return std::nullopt;
    return any;
  }

  std::optional<bool> in_K(double t) const {
    bool any = false;
    for (double r : b.row) {
      if (std::abs(t - r) <= eps) return std::nullopt;
      any = any || t <= r;
    }
    return any;
  }
  std::optional<bool> in_L(double t) const {
    return brauer([&](std::size_t i, std::size_t j) {
      const double d = std::abs(a.row_diagonal(i, j));
      return (t - (b.row[i] - d)) * t - d * b.row[j];
    });
  }
  std::optional<bool> in_Psi(double t) const {
    return brauer([&](std::size_t i, std::size_t j) {
      return (t - b.without[i][j]) * t - b.with[i][j] * b.row[j];
    });
  }
  std::optional<bool> in_Omega(double t) const {
    // closure of |z| < without(i,j), |z| < with(j,j)
    auto strict = brauer([&](std::size_t i, std::size_t j) {
      return t - std::min(b.without[i][j], b.with[j][j]);
    });
    auto quad = brauer([&](std::size_t i, std::size_t j) {
      const double q = (t - b.without[i][j]) * (t - b.with[j][j]) - b.with[i][j] * b.without[j][j];
      return std::max(q, t - b.row[i]);
    });
    if (!strict || !quad) return std::nullopt;
    return *strict || *quad;
  }
};

}  // namespace

TEST_CASE("row aggregates of the bundled examples") {
  const RowAggregates e1 = row_aggregates(example1());
  CHECK(e1.row == std::vector<double>{4.75, 6.75});
  CHECK(e1.without_index(0, 1) == 1.0);
  CHECK(e1.with_index(0, 1) == 3.75);
  CHECK(e1.without_index(1, 0) == 5.0);
  CHECK(e1.with_index(1, 0) == 1.75);
  CHECK(e1.with_index(0, 0) == 4.75);
  CHECK(e1.with_index(1, 1) == 5.75);
  CHECK(e1.without_index(1, 1) == 1.0);

  const RowAggregates e2 = row_aggregates(example2());
  CHECK(e2.row == std::vector<double>{17.0, 19.0, 10.5});
}

TEST_CASE("row aggregates match brute-force enumeration and partition each row") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const Tensor a = random_tensor(rng, 2 + trial % 4, 2 + trial % 3, -1.0, 1.0);
    const RowAggregates agg = row_aggregates(a);
    const BruteAggregates b = brute_aggregates(a);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      CHECK(agg.row[i] == doctest::Approx(b.row[i]).epsilon(1e-13));
      for (std::size_t j = 0; j < a.dim(); ++j) {
        CHECK(agg.with_index(i, j) == doctest::Approx(b.with[i][j]).epsilon(1e-13));
        CHECK(agg.without_index(i, j) == doctest::Approx(b.without[i][j]).epsilon(1e-13));
        CHECK(std::abs(agg.with_index(i, j) + agg.without_index(i, j) - agg.row[i]) <=
              1e-12 * (1.0 + agg.row[i]));
        CHECK(agg.with_index(i, j) >= 0.0);
        CHECK(agg.without_index(i, j) >= 0.0);
        CHECK(agg.with_index(i, j) <= agg.row[i] * (1.0 + 1e-15));
      }
    }
  }
}

TEST_CASE("quadratic_region") {
  // t^2 - 6.75 t + 2 <= 0; roots (6.75 -+ sqrt(37.5625)) / 2
  const IntervalSet q = quadratic_region(1.0, 5.75, 3.75);
  REQUIRE(q.size() == 1);
  CHECK(q.intervals()[0].lo == doctest::Approx(0.31058733196718435).epsilon(1e-13));
  CHECK(q.intervals()[0].hi == doctest::Approx(6.439412668032816).epsilon(1e-13));

  CHECK(quadratic_region(5.0, 4.75, 0.0) == IntervalSet::single(4.75, 5.0));
  CHECK(quadratic_region(0.0, 0.0, 0.0) == IntervalSet::single(0.0, 0.0));
  CHECK_THROWS_AS(quadratic_region(1.0, 1.0, -1e-3), std::invalid_argument);

  // Lower root below zero is clipped.
  CHECK(quadratic_region(1.0, 0.0, 2.0).intervals()[0].lo == 0.0);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng) * u(rng);
    const IntervalSet s = quadratic_region(a, b, c);
    REQUIRE(s.size() == 1);
    const double hi = s.intervals()[0].hi, lo = s.intervals()[0].lo;
    CHECK(std::abs((hi - a) * (hi - b) - c) <= 1e-9);
    if (lo > 0.0) CHECK(std::abs((lo - a) * (lo - b) - c) <= 1e-9);
    else CHECK((0.0 - a) * (0.0 - b) <= c + 1e-9);
  }
}

TEST_CASE("Example 1 localization sets") {
  const Tensor a = example1();
  const RowAggregates agg = row_aggregates(a);

  const SetReport k = set_K(agg);
  CHECK(*k.radius == 6.75);
  CHECK(k.set == IntervalSet::single(0.0, 6.75));

  const SetReport l = set_L(a, agg);
  CHECK(std::abs(*l.radius - 6.4827) <= 5e-5);
  CHECK(*l.radius == doctest::Approx(6.482717422415453).epsilon(1e-13));

  const SetReport psi = set_Psi(agg);
  CHECK(std::abs(*psi.radius - 6.3161) <= 5e-5);
  CHECK(psi.per_index[1].intervals().back().hi == doctest::Approx((5.0 + std::sqrt(58.25)) / 2.0));

  const SetReport omega = set_Omega(agg);
  CHECK(omega.set == IntervalSet::single(0.0, 5.0));
  CHECK(*omega.radius == 5.0);
  REQUIRE(omega.families.size() == 2);
  const auto& strict = omega.families[0];
  const auto& quad = omega.families[1];
  CHECK(strict.per_index[0] == IntervalSet::single(0.0, 1.0));
  CHECK(strict.per_index[1] == IntervalSet::single(0.0, 4.75));
  REQUIRE(quad.per_index[0].size() == 1);
  CHECK(quad.per_index[0].intervals()[0].lo == doctest::Approx(0.31058733196718435));
  CHECK(quad.per_index[0].intervals()[0].hi == 4.75);
  CHECK(quad.per_index[1] == IntervalSet::single(4.75, 5.0));
  CHECK(interval_union(strict.set, quad.set) == omega.set);
}

TEST_CASE("zero tensor: every set is the origin") {
  for (std::size_t n : {2u, 3u}) {
    const Tensor z(3, n);
    const AllSets s = all_sets(z);
    for (SetKind k : {SetKind::K, SetKind::L, SetKind::Psi, SetKind::Omega}) {
      CHECK(s[k].set == IntervalSet::single(0.0, 0.0));
      CHECK(*s[k].radius == 0.0);
    }
    CHECK(inclusion_chain_check(z).holds);
  }
}

TEST_CASE("diagonal nonnegative tensor: L radius is the largest diagonal entry") {
  Tensor a(3, 3);
  const double d[] = {2.0, 7.5, 0.5};
  for (std::size_t i = 0; i < 3; ++i) a.set(Index(3, i), d[i]);
  CHECK(*set_L(a, row_aggregates(a)).radius == 7.5);
  CHECK(*set_K(row_aggregates(a)).radius == 7.5);
}

TEST_CASE("Example 1 inclusion chain and radii ordering") {
  const AllSets s = all_sets(example1());
  const ChainCheck c = inclusion_chain_check(s);
  CHECK(c.holds);
  CHECK(c.violations.empty());
  CHECK(*s.Omega.radius <= *s.Psi.radius);
  CHECK(*s.Psi.radius <= *s.L.radius);
  CHECK(*s.L.radius <= *s.K.radius);
}

TEST_CASE("inclusion chain on 200 random tensors") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (std::size_t m : {3u, 4u})
    for (std::size_t n : {2u, 3u, 4u})
      for (int rep = 0; rep < 34; ++rep) {
        const bool signed_entries = rep % 2 == 0;
        const Tensor a = random_tensor(rng, m, n, signed_entries ? -1.0 : 0.0, 1.0);
        const ChainCheck c = inclusion_chain_check(a);
        CHECK(c.holds);
        ++checked;
      }
  CHECK(checked >= 200);
}

TEST_CASE("a corrupted set breaks the chain and reports the offending interval") {
  AllSets s = all_sets(example1());
  s.Psi.set = s.Psi.set.scaled(0.5);
  const ChainCheck c = inclusion_chain_check(s);
  CHECK_FALSE(c.holds);
  REQUIRE_FALSE(c.violations.empty());
  CHECK(c.violations[0].inner == SetKind::Omega);
  CHECK(c.violations[0].outer == SetKind::Psi);
  CHECK(c.violations[0].offending.hi == 5.0);
}

TEST_CASE("interval sets agree with pointwise membership from the defining inequalities") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const Tensor a = random_tensor(rng, 3 + trial % 2, 2 + trial % 3, trial % 2 ? 0.0 : -1.0, 1.0);
    const AllSets s = all_sets(a);
    const PointOracle oracle(a);
    const double top = *s.K.radius * 1.1;
    for (int k = 0; k <= 400; ++k) {
      const double t = top * k / 400.0;
      if (auto v = oracle.in_K(t)) CHECK(interval_contains(s.K.set, t) == *v);
      if (auto v = oracle.in_L(t)) CHECK(interval_contains(s.L.set, t) == *v);
      if (auto v = oracle.in_Psi(t)) CHECK(interval_contains(s.Psi.set, t) == *v);
      if (auto v = oracle.in_Omega(t)) CHECK(interval_contains(s.Omega.set, t) == *v);
    }
  }
}

TEST_CASE("positive scaling scales aggregates and radii") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const Tensor a = random_tensor(rng, 3, 2 + trial % 3, -1.0, 1.0);
    const double s = 0.25 + trial * 0.5;
    const Tensor b = scaled(a, s);
    const RowAggregates ra = row_aggregates(a), rb = row_aggregates(b);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      CHECK(rb.row[i] == doctest::Approx(s * ra.row[i]).epsilon(1e-12));
      for (std::size_t j = 0; j < a.dim(); ++j)
        CHECK(rb.with_index(i, j) == doctest::Approx(s * ra.with_index(i, j)).epsilon(1e-12));
    }
    const AllSets sa = all_sets(a), sb = all_sets(b);
    for (SetKind k : {SetKind::K, SetKind::L, SetKind::Psi, SetKind::Omega})
      CHECK(*sb[k].radius == doctest::Approx(s * *sa[k].radius).epsilon(1e-12));
  }
}

TEST_CASE("enlarging one entry never shrinks the K, L or Psi radius") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> bump(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    Tensor a = random_tensor(rng, 3 + trial % 2, 2 + trial % 3, -1.0, 1.0);
    const AllSets before = all_sets(a);
    const Index idx = a.unflatten(rng() % a.size());
    const double v = a(idx);
    a.set(idx, v + (v >= 0 ? 1.0 : -1.0) * bump(rng));
    const AllSets after = all_sets(a);
    for (SetKind k : {SetKind::K, SetKind::L, SetKind::Psi})
      CHECK(*after[k].radius >= *before[k].radius - 1e-12);
  }
}

TEST_CASE("set_kind names round-trip") {
  for (SetKind k : {SetKind::K, SetKind::L, SetKind::Psi, SetKind::Omega})
    CHECK(set_kind_from_string(to_string(k)) == k);
  CHECK_FALSE(set_kind_from_string("Gamma").has_value());
}
