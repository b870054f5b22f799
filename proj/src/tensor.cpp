#include "zloc/tensor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

namespace zloc {

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

namespace {

std::size_t checked_size(std::size_t order, std::size_t dim) {
  if (order < 2) throw DimensionError("tensor order must be at least 2");
  if (dim < 2) throw DimensionError("tensor dimension must be at least 2");
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < order; ++k) {
    count *= dim;
    if (count > Tensor::kMaxEntries)
      throw DimensionError("tensor has more than 1e8 entries; dense storage refused");
  }
  return static_cast<std::size_t>(count);
}

void check_length(const Tensor& a, std::span<const double> x) {
  if (x.size() != a.dim())
    throw DimensionError("vector length " + std::to_string(x.size()) +
                         " does not match tensor dimension " + std::to_string(a.dim()));
}

}  // namespace

Tensor::Tensor(std::size_t order, std::size_t dim)
    : order_(order), dim_(dim), data_(checked_size(order, dim), 0.0) {}

Tensor::Tensor(std::size_t order, std::size_t dim, std::vector<double> entries)
    : order_(order), dim_(dim), data_(std::move(entries)) {
  if (data_.size() != checked_size(order, dim))
    throw DimensionError("entry count does not equal dim^order");
  for (double v : data_)
    if (!std::isfinite(v)) throw std::invalid_argument("tensor entries must be finite");
}

std::size_t Tensor::flat(std::span<const std::size_t> idx) const {
  if (idx.size() != order_) throw DimensionError("index length does not match tensor order");
  std::size_t f = 0;
  for (std::size_t k : idx) {
    if (k >= dim_) throw DimensionError("index out of range");
    f = f * dim_ + k;
  }
  return f;
}

Index Tensor::unflatten(std::size_t f) const {
  Index idx(order_);
  for (std::size_t p = order_; p-- > 0;) {
    idx[p] = f % dim_;
    f /= dim_;
  }
  return idx;
}

void Tensor::set(std::span<const std::size_t> idx, double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("tensor entries must be finite");
  data_[flat(idx)] = value;
}

double Tensor::row_diagonal(std::size_t i, std::size_t j) const {
  Index idx(order_, j);
  idx[0] = i;
  return data_[flat(idx)];
}

double Tensor::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool next_index(Index& idx, std::size_t dim) {
  for (std::size_t p = idx.size(); p-- > 0;) {
    if (++idx[p] < dim) return true;
    idx[p] = 0;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    std::size_t end = pos;
    while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end]))) ++end;
    if (end > pos) out.push_back(s.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

struct Header {
  std::size_t order = 0;
  std::size_t dim = 0;
  bool symmetric = false;
};

Header parse_header(std::string_view line, std::size_t lineno) {
  auto toks = split_ws(line);
  if (toks.empty() || toks[0] != "tensor")
    throw ParseError("header must start with 'tensor'", lineno);
  Header h;
  bool have_m = false, have_n = false;
  for (std::size_t k = 1; k < toks.size(); ++k) {
    auto t = toks[k];
    if (t == "symmetric") {
      h.symmetric = true;
    } else if (t.starts_with("m=") && !have_m) {
      if (!parse_number(t.substr(2), h.order)) throw ParseError("malformed order in header", lineno);
      have_m = true;
    } else if (t.starts_with("n=") && !have_n) {
      if (!parse_number(t.substr(2), h.dim)) throw ParseError("malformed dimension in header", lineno);
      have_n = true;
    } else {
      throw ParseError("unexpected header token '" + std::string(t) + "'", lineno);
    }
  }
  if (!have_m || !have_n) throw ParseError("header must declare m=<order> and n=<dim>", lineno);
  if (h.order < 2 || h.dim < 2) throw ParseError("header requires m >= 2 and n >= 2", lineno);
  return h;
}

}  // namespace

Tensor parse_tensor(std::istream& in) {
  constexpr double kConflictTol = 1e-12;

  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  Header header;
  std::optional<Tensor> tensor;
  // flat position -> (value, line that first set it)
  std::map<std::size_t, std::pair<double, std::size_t>> assigned;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (!have_header) {
      header = parse_header(line, lineno);
      try {
        tensor.emplace(header.order, header.dim);
      } catch (const DimensionError& e) {
        throw ParseError(e.what(), lineno);
      }
      have_header = true;
      continue;
    }

    auto toks = split_ws(line);
    if (toks.size() != header.order + 1)
      throw ParseError("expected " + std::to_string(header.order) + " indices and a value", lineno);
    Index idx(header.order);
    for (std::size_t p = 0; p < header.order; ++p) {
      std::size_t k = 0;
      if (!parse_number(toks[p], k)) throw ParseError("malformed index '" + std::string(toks[p]) + "'", lineno);
      if (k < 1 || k > header.dim)
        throw ParseError("index " + std::to_string(k) + " out of range [1, " +
                             std::to_string(header.dim) + "]",
                         lineno);
      idx[p] = k - 1;
    }
    double value = 0.0;
    if (!parse_number(toks.back(), value) || !std::isfinite(value))
      throw ParseError("malformed value '" + std::string(toks.back()) + "'", lineno);

    std::vector<Index> targets;
    if (header.symmetric) {
      Index perm = idx;
      std::sort(perm.begin(), perm.end());
      do targets.push_back(perm);
      while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      targets.push_back(idx);
    }

    for (const auto& t : targets) {
      const std::size_t f = tensor->flat(t);
      auto [it, fresh] = assigned.try_emplace(f, value, lineno);
      if (!fresh && std::abs(it->second.first - value) > kConflictTol)
        throw ParseError("conflicting value for an entry already set on line " +
                             std::to_string(it->second.second),
                         lineno);
      if (fresh) tensor->set(t, value);
    }
  }
  if (!have_header) throw ParseError("missing 'tensor' header", 0);
  return std::move(*tensor);
}

Tensor parse_tensor(const std::string& text) {
  std::istringstream in(text);
  return parse_tensor(in);
}

Tensor load_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return parse_tensor(in);
}

std::string serialize_tensor(const Tensor& a) {
  std::ostringstream out;
  out << "tensor m=" << a.order() << " n=" << a.dim() << '\n';
  Index idx(a.order(), 0);
  char buf[32];
  for (double v : a.entries()) {
    if (v != 0.0 || std::signbit(v)) {
      for (std::size_t k : idx) out << (k + 1) << ' ';
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf << '\n';
    }
    next_index(idx, a.dim());
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Multilinear forms

Vector contract(const Tensor& a, std::span<const double> x) {
  check_length(a, x);
  Vector out(a.dim(), 0.0);
  Index idx(a.order(), 0);
  for (double v : a.entries()) {
    if (v != 0.0) {
      double prod = v;
      for (std::size_t p = 1; p < idx.size(); ++p) prod *= x[idx[p]];
      out[idx[0]] += prod;
    }
    next_index(idx, a.dim());
  }
  return out;
}

double polyval(const Tensor& a, std::span<const double> x) {
  const Vector ax = contract(a, x);
  double s = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) s += x[i] * ax[i];
  return s;
}

Vector gradient(const Tensor& a, std::span<const double> x) {
  check_length(a, x);
  Vector out(a.dim(), 0.0);
  Index idx(a.order(), 0);
  const std::size_t m = a.order();
  for (double v : a.entries()) {
    if (v != 0.0) {
      for (std::size_t p = 0; p < m; ++p) {
        double prod = v;
        for (std::size_t q = 0; q < m; ++q)
          if (q != p) prod *= x[idx[q]];
        out[idx[p]] += prod;
      }
    }
    next_index(idx, a.dim());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structure

bool is_nonnegative(const Tensor& a) {
  return std::all_of(a.entries().begin(), a.entries().end(), [](double v) { return v >= 0.0; });
}

bool is_symmetric(const Tensor& a, double tol) {
  Index idx(a.order(), 0);
  Index perm;
  for (double v : a.entries()) {
    perm = idx;
    std::sort(perm.begin(), perm.end());
    do {
      if (std::abs(a(perm) - v) > tol) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    next_index(idx, a.dim());
  }
  return true;
}

WeakSymmetryCheck check_weak_symmetry(const Tensor& a, int trials, double tol, std::uint64_t seed) {
  WeakSymmetryCheck out;
  out.seed = seed;
  out.trials = trials;
  out.threshold = tol * (1.0 + a.max_abs());

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const double m = static_cast<double>(a.order());
  Vector x(a.dim());
  for (int t = 0; t < trials; ++t) {
    double norm = 0.0;
    do {
      for (double& xi : x) xi = normal(rng);
      norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    } while (norm == 0.0);
    for (double& xi : x) xi /= norm;

    const Vector g = gradient(a, x);
    const Vector ax = contract(a, x);
    for (std::size_t i = 0; i < x.size(); ++i)
      out.max_residual = std::max(out.max_residual, std::abs(g[i] - m * ax[i]));
  }
  out.weakly_symmetric = out.max_residual <= out.threshold;
  return out;
}

bool is_weakly_symmetric(const Tensor& a, int trials, double tol, std::uint64_t seed) {
  return check_weak_symmetry(a, trials, tol, seed).weakly_symmetric;
}

Tensor symmetrized(const Tensor& a) {
  if (is_symmetric(a)) return a;
  std::map<Index, std::pair<double, std::size_t>> orbit;
  Index idx(a.order(), 0);
  for (double v : a.entries()) {
    Index key = idx;
    std::sort(key.begin(), key.end());
    auto& [sum, count] = orbit[key];
    sum += v;
    ++count;
    next_index(idx, a.dim());
  }
  std::vector<double> out(a.size());
  std::fill(idx.begin(), idx.end(), 0);
  for (double& v : out) {
    Index key = idx;
    std::sort(key.begin(), key.end());
    const auto& [sum, count] = orbit.at(key);
    v = sum / static_cast<double>(count);
    next_index(idx, a.dim());
  }
  return Tensor(a.order(), a.dim(), std::move(out));
}

Tensor scaled(const Tensor& a, double s) {
  std::vector<double> out(a.entries().begin(), a.entries().end());
  for (double& v : out) v *= s;
  return Tensor(a.order(), a.dim(), std::move(out));
}

}  // namespace zloc
