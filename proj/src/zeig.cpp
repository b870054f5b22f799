#include "zloc/zeig.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace zloc {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double distance(std::span<const double> a, std::span<const double> b, double sign = 1.0) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - sign * b[i]) * (a[i] - sign * b[i]);
  return std::sqrt(s);
}

// d (A x^{m-1})_i / d x_k, i.e. the derivative of contract() with respect to x.
Eigen::MatrixXd contract_jacobian(const Tensor& a, std::span<const double> x) {
  const std::size_t n = a.dim(), m = a.order();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  Index idx(m, 0);
  for (double v : a.entries()) {
    if (v != 0.0) {
      for (std::size_t p = 1; p < m; ++p) {
        double prod = v;
        for (std::size_t q = 1; q < m; ++q)
          if (q != p) prod *= x[idx[q]];
        jac(idx[0], idx[p]) += prod;
      }
    }
    next_index(idx, n);
  }
  return jac;
}

ZEigenPair make_pair(const Tensor& a, Vector x, std::string source) {
  const double nrm = norm2(x);
  for (double& e : x) e /= nrm;
  ZEigenPair p;
  const Vector ax = contract(a, x);
  p.lambda = dot(x, ax);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r += (ax[i] - p.lambda * x[i]) * (ax[i] - p.lambda * x[i]);
  p.residual = std::sqrt(r);
  p.x = std::move(x);
  p.source = std::move(source);
  return p;
}

// Newton on [A x^{m-1} - lambda x ; (1 - x.x)/2] = 0, keeping the best iterate.
ZEigenPair newton_polish(const Tensor& a, ZEigenPair p) {
  const std::size_t n = a.dim();
  for (int it = 0; it < 30 && p.residual > 0.0; ++it) {
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(n + 1, n + 1);
    sys.topLeftCorner(n, n) = contract_jacobian(a, p.x) - p.lambda * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd rhs(n + 1);
    const Vector ax = contract(a, p.x);
    for (std::size_t i = 0; i < n; ++i) {
      sys(i, n) = -p.x[i];
      sys(n, i) = -p.x[i];
      rhs(i) = -(ax[i] - p.lambda * p.x[i]);
    }
    rhs(n) = -0.5 * (1.0 - dot(p.x, p.x));
    const Eigen::VectorXd step = sys.colPivHouseholderQr().solve(rhs);
    if (!step.allFinite()) break;

    Vector next(p.x);
    for (std::size_t i = 0; i < n; ++i) next[i] += step(i);
    ZEigenPair cand = make_pair(a, std::move(next), p.source);
    if (!(cand.residual < p.residual)) break;
    p = std::move(cand);
  }
  return p;
}

// Even order: x and -x share lambda, so fix the sign of the first significant entry.
void canonical_sign(ZEigenPair& p, std::size_t order) {
  if (order % 2 != 0) return;
  for (double e : p.x) {
    if (std::abs(e) > 1e-9) {
      if (e < 0.0)
        for (double& v : p.x) v = -v;
      return;
    }
  }
}

struct Cluster {
  ZEigenPair rep;
  std::vector<Vector> members;
};

void add_to_clusters(std::vector<Cluster>& clusters, ZEigenPair p, double lambda_tol,
                     double angle_tol) {
  for (auto& c : clusters) {
    if (std::abs(c.rep.lambda - p.lambda) > lambda_tol) continue;
    if (distance(c.rep.x, p.x) > angle_tol && distance(c.rep.x, p.x, -1.0) > angle_tol) continue;
    const bool known = std::any_of(c.members.begin(), c.members.end(),
                                   [&](const Vector& v) { return distance(v, p.x) <= angle_tol; });
    if (!known) c.members.push_back(p.x);
    if (p.residual < c.rep.residual) {
      p.multiplicity = c.rep.multiplicity;
      c.rep = std::move(p);
    }
    c.rep.multiplicity = static_cast<int>(c.members.size());
    return;
  }
  Cluster c;
  c.members.push_back(p.x);
  c.rep = std::move(p);
  c.rep.multiplicity = 1;
  clusters.push_back(std::move(c));
}

std::vector<ZEigenPair> finalize(std::vector<Cluster> clusters, std::size_t order) {
  std::vector<ZEigenPair> out;
  for (auto& c : clusters) {
    canonical_sign(c.rep, order);
    out.push_back(std::move(c.rep));
  }
  std::sort(out.begin(), out.end(), [](const ZEigenPair& l, const ZEigenPair& r) {
    if (l.lambda != r.lambda) return l.lambda < r.lambda;
    return l.x < r.x;
  });
  return out;
}

}  // namespace

double residual(const Tensor& a, double lambda, std::span<const double> x) {
  const Vector ax = contract(a, x);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r += (ax[i] - lambda * x[i]) * (ax[i] - lambda * x[i]);
  return std::sqrt(r);
}

// ---------------------------------------------------------------------------
// n = 2: scan the unit circle

std::vector<ZEigenPair> circle_solve(const Tensor& a, int samples) {
  if (a.dim() != 2) throw DimensionError("circle_solve requires dimension 2");
  if (samples < 360) throw std::invalid_argument("circle_solve requires at least 360 samples");

  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  auto tangential = [&](double theta) {
    const double x[2] = {std::cos(theta), std::sin(theta)};
    const Vector ax = contract(a, x);
    return ax[0] * x[1] - ax[1] * x[0];
  };
  auto at = [](double theta) { return Vector{std::cos(theta), std::sin(theta)}; };

  const double h = kTwoPi / samples;
  std::vector<double> g(samples);
  for (int k = 0; k < samples; ++k) g[k] = tangential(k * h);

  std::vector<double> roots;
  const auto first = std::find_if(g.begin(), g.end(), [](double v) { return v != 0.0; });
  if (first == g.end()) {
    // Every direction is an eigenvector.
    roots.push_back(0.0);
  } else {
    const int k0 = static_cast<int>(first - g.begin());
    bool in_zero_run = false;
    for (int step = 0; step < samples; ++step) {
      const int cur = (k0 + step) % samples;
      const int nxt = (cur + 1) % samples;
      const double lo_theta = (k0 + step) * h;
      const double hi_theta = lo_theta + h;
      if (g[nxt] == 0.0) {
        if (!in_zero_run) roots.push_back(hi_theta);
        in_zero_run = true;
        continue;
      }
      in_zero_run = false;
      if (g[cur] == 0.0 || (g[cur] < 0.0) == (g[nxt] < 0.0)) continue;

      double lo = lo_theta, hi = hi_theta, glo = g[cur];
      double best = lo, gbest = std::abs(glo);
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = tangential(mid);
        if (std::abs(gm) < gbest) {
          best = mid;
          gbest = std::abs(gm);
        }
        if (gbest <= 1e-12 && hi - lo < 1e-9) break;
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(best);
    }
  }

  std::vector<Cluster> clusters;
  for (double theta : roots)
    add_to_clusters(clusters, make_pair(a, at(theta), "circle"), 1e-6, 1e-5);
  return finalize(std::move(clusters), a.order());
}

// ---------------------------------------------------------------------------
// Shifted power iteration

double automatic_shift(const Tensor& a) {
  const RowAggregates agg = row_aggregates(a);
  const double max_row = *std::max_element(agg.row.begin(), agg.row.end());
  const double m = static_cast<double>(a.order());
  return std::max(m * a.max_abs(), (m - 1.0) * max_row) + 1.0;
}

OracleRun sshopm(const Tensor& a, const OracleConfig& cfg) {
  if (cfg.starts < 1 || cfg.max_iter < 1 || !(cfg.tol > 0.0))
    throw std::invalid_argument("oracle config requires starts >= 1, max_iter >= 1, tol > 0");

  OracleRun run;
  run.shift = cfg.shift ? std::abs(*cfg.shift) : automatic_shift(a);
  run.weakly_symmetric = is_weakly_symmetric(a);

  const std::size_t n = a.dim();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  std::vector<Cluster> clusters;

  for (int s = 0; s < cfg.starts; ++s) {
    Vector start(n);
    double nrm = 0.0;
    do {
      for (double& e : start) e = normal(rng);
      nrm = norm2(start);
    } while (nrm == 0.0);
    for (double& e : start) e /= nrm;

    for (double sign : {1.0, -1.0}) {
      ++run.runs;
      Vector x = start;
      Vector next(n);
      bool converged = false;
      for (int it = 0; it < cfg.max_iter; ++it) {
        const Vector ax = contract(a, x);
        for (std::size_t i = 0; i < n; ++i) next[i] = ax[i] + sign * run.shift * x[i];
        const double len = norm2(next);
        if (len == 0.0) break;
        // With a negative shift the iteration climbs toward minimizers, hence -sign.
        for (double& e : next) e *= sign / len;
        const double moved = distance(next, x);
        std::swap(x, next);
        if (moved <= cfg.tol) {
          converged = true;
          break;
        }
      }
      if (converged) ++run.converged;

      ZEigenPair p = make_pair(a, x, "sshopm");
      if (cfg.polish) p = newton_polish(a, std::move(p));
      if (!(p.residual <= kAcceptResidual)) continue;
      ++run.accepted;
      add_to_clusters(clusters, std::move(p), cfg.dedupe_tol, cfg.angle_tol);
    }
  }
  run.pairs = finalize(std::move(clusters), a.order());
  return run;
}

std::vector<ZEigenPair> find_eigenpairs(const Tensor& a, const OracleConfig& cfg) {
  if (a.dim() == 2) return circle_solve(a);
  return sshopm(a, cfg).pairs;
}

// ---------------------------------------------------------------------------
// Verification

std::size_t Verification::failures() const {
  std::size_t bad = static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const VerificationCell& c) { return !c.pass; }));
  if (chain && !chain->holds) bad += chain->violations.size();
  return bad;
}

Verification verify_inclusion(const Tensor& a, const std::vector<ZEigenPair>& pairs,
                              const AllSets& sets, const BoundReport& bounds, double base_slack) {
  Verification doc;
  doc.pairs = pairs;
  doc.bounds_checked = bounds.applicable();

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const ZEigenPair& p = pairs[k];
    const double r = residual(a, p);
    const double mag = std::abs(p.lambda);
    const double slack = base_slack + 10.0 * r;

    if (r > kAcceptResidual)
      doc.cells.push_back({k, "residual", r, kAcceptResidual, 0.0, false});

    for (SetKind kind : {SetKind::K, SetKind::L, SetKind::Psi, SetKind::Omega}) {
      const SetReport& rep = sets[kind];
      doc.cells.push_back({k, rep.name(), mag, rep.radius.value_or(0.0), slack,
                           interval_contains(rep.set, mag, slack)});
    }
    if (doc.bounds_checked) {
      const std::pair<const char*, double> limits[] = {{"omega_max", bounds.omega.value.value},
                                                       {"zhao", bounds.zhao.value},
                                                       {"wang", bounds.wang.value},
                                                       {"maxR", bounds.maxR.value}};
      for (const auto& [name, limit] : limits)
        doc.cells.push_back({k, name, mag, limit, slack, mag <= limit + slack});
    }
  }
  return doc;
}

}  // namespace zloc
