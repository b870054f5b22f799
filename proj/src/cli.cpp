#include "zloc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace zloc::cli {

namespace {

constexpr SetKind kAllKinds[] = {SetKind::K, SetKind::L, SetKind::Psi, SetKind::Omega};

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string fixed4(const std::optional<double>& v) { return v ? fixed4(*v) : std::string("-"); }

Json intervals_json(const IntervalSet& s) {
  Json arr = Json::array();
  for (const auto& iv : s.intervals()) arr.push_back({iv.lo, iv.hi});
  return arr;
}

Json bound_value_json(const BoundValue& b) {
  Json j;
  j["value"] = b.value;
  j["row"] = b.row + 1;
  j["column"] = b.column ? Json(*b.column + 1) : Json(nullptr);
  return j;
}

std::string bool_word(bool b) { return b ? "true" : "false"; }

CommandResult structured(Json doc) { return {doc.dump(2) + "\n", "", exit_code::kOk}; }

Json meta_json(const RunConfig& cfg) {
  Json meta;
  meta["tool"] = "zloc";
  meta["subcommand"] = cfg.subcommand;
  meta["input"] = cfg.input;
  meta["seed"] = cfg.oracle.seed;
  return meta;
}

std::vector<ZEigenPair> run_oracle(const Tensor& a, const RunConfig& cfg) {
  switch (cfg.solver) {
    case Solver::Circle: return circle_solve(a);
    case Solver::Sshopm: return sshopm(a, cfg.oracle).pairs;
    case Solver::Auto: break;
  }
  return find_eigenpairs(a, cfg.oracle);
}

std::string eigenpair_table(const std::vector<ZEigenPair>& pairs) {
  std::ostringstream os;
  os << "Z-eigenpairs (" << pairs.size() << ")\n";
  os << "  lambda        residual    mult  source  x\n";
  for (const auto& p : pairs) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %-12s  %-10.3e  %-4d  %-6s  (", fixed4(p.lambda).c_str(),
                  p.residual, p.multiplicity, p.source.c_str());
    os << buf;
    for (std::size_t i = 0; i < p.x.size(); ++i) os << (i ? ", " : "") << fixed4(p.x[i]);
    os << ")\n";
  }
  return os.str();
}

}  // namespace

std::optional<Format> format_from_string(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "structured" || s == "json") return Format::Structured;
  if (s == "plot-data") return Format::PlotData;
  if (s == "svg") return Format::Svg;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Structured pieces

Json info_json(const Tensor& a, std::uint64_t seed) {
  const WeakSymmetryCheck ws = check_weak_symmetry(a, 20, 1e-9, seed);
  Json j;
  j["order"] = a.order();
  j["dim"] = a.dim();
  j["entries"] = a.size();
  j["nonnegative"] = is_nonnegative(a);
  j["symmetric"] = is_symmetric(a);
  j["weakly_symmetric"] = ws.weakly_symmetric;
  j["weak_symmetry_test"] = {{"seed", ws.seed},
                             {"trials", ws.trials},
                             {"max_residual", ws.max_residual},
                             {"threshold", ws.threshold}};
  return j;
}

Json set_json(const SetReport& rep) {
  Json j;
  j["name"] = rep.name();
  j["intervals"] = intervals_json(rep.set);
  j["radius"] = rep.radius ? Json(*rep.radius) : Json(nullptr);
  Json per = Json::array();
  for (const auto& s : rep.per_index) per.push_back(intervals_json(s));
  j["per_index"] = per;
  if (!rep.families.empty()) {
    Json fams = Json::array();
    for (const auto& f : rep.families) {
      Json fj;
      fj["name"] = f.name;
      fj["intervals"] = intervals_json(f.set);
      Json fper = Json::array();
      for (const auto& s : f.per_index) fper.push_back(intervals_json(s));
      fj["per_index"] = fper;
      fams.push_back(fj);
    }
    j["families"] = fams;
  }
  return j;
}

Json sets_json(const AllSets& sets) {
  Json arr = Json::array();
  for (SetKind k : kAllKinds) arr.push_back(set_json(sets[k]));
  return arr;
}

Json bounds_json(const BoundReport& rep) {
  Json j;
  Json omega = bound_value_json(rep.omega.value);
  omega["strict_part"] = bound_value_json(rep.omega.strict);
  omega["quadratic_part"] = bound_value_json(rep.omega.quad);
  j["omega_max"] = omega;
  j["zhao"] = bound_value_json(rep.zhao);
  j["wang"] = bound_value_json(rep.wang);
  j["maxR"] = bound_value_json(rep.maxR);
  j["nonnegative"] = rep.nonnegative;
  j["weakly_symmetric"] = rep.weak_symmetry.weakly_symmetric;
  j["applicable"] = rep.applicable();
  return j;
}

Json eigenpairs_json(const std::vector<ZEigenPair>& pairs) {
  Json arr = Json::array();
  for (const auto& p : pairs) {
    Json j;
    j["lambda"] = p.lambda;
    j["x"] = p.x;
    j["residual"] = p.residual;
    j["source"] = p.source;
    j["multiplicity"] = p.multiplicity;
    arr.push_back(j);
  }
  return arr;
}

Json verification_json(const Verification& doc) {
  Json j;
  j["passed"] = doc.passed();
  j["failures"] = doc.failures();
  j["bounds_checked"] = doc.bounds_checked;
  Json cells = Json::array();
  for (const auto& c : doc.cells) {
    Json cj;
    cj["pair"] = c.pair + 1;
    cj["target"] = c.target;
    cj["value"] = c.value;
    cj["limit"] = c.limit;
    cj["slack"] = c.slack;
    cj["pass"] = c.pass;
    cells.push_back(cj);
  }
  j["cells"] = cells;
  if (doc.chain) {
    Json chain;
    chain["holds"] = doc.chain->holds;
    Json viol = Json::array();
    for (const auto& v : doc.chain->violations)
      viol.push_back({{"inner", to_string(v.inner)},
                      {"outer", to_string(v.outer)},
                      {"interval", {v.offending.lo, v.offending.hi}}});
    chain["violations"] = viol;
    j["chain"] = chain;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Plot output

std::string plot_data(const AllSets& sets) {
  std::ostringstream os;
  os << "set,inner_radius,outer_radius\n";
  char buf[128];
  for (SetKind k : kAllKinds) {
    for (const auto& iv : sets[k].set.intervals()) {
      std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g\n", to_string(k).c_str(), iv.lo, iv.hi);
      os << buf;
    }
  }
  return os.str();
}

std::string render_svg(const AllSets& sets, const std::vector<ZEigenPair>& pairs) {
  struct Style {
    const char* stroke;
    const char* width;
    const char* dash;
  };
  auto style = [](SetKind k) -> Style {
    switch (k) {
      case SetKind::K: return {"black", "1.5", "8,5"};
      case SetKind::L: return {"green", "1.5", ""};
      case SetKind::Psi: return {"blue", "1.5", "2,4"};
      case SetKind::Omega: return {"red", "3", ""};
    }
    return {"black", "1", ""};
  };

  double extent = 1.0;
  for (SetKind k : kAllKinds)
    if (sets[k].radius) extent = std::max(extent, *sets[k].radius);
  for (const auto& p : pairs) extent = std::max(extent, std::abs(p.lambda));
  constexpr double kSize = 600.0, kMargin = 40.0;
  const double scale = (kSize / 2.0 - kMargin) / extent;
  const double c = kSize / 2.0;

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize + 160 << "\" height=\"" << kSize
     << "\" viewBox=\"0 0 " << kSize + 160 << ' ' << kSize << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <line x1=\"0\" y1=\"" << c << "\" x2=\"" << kSize << "\" y2=\"" << c
     << "\" stroke=\"#bbb\"/>\n";
  os << "  <line x1=\"" << c << "\" y1=\"0\" x2=\"" << c << "\" y2=\"" << kSize
     << "\" stroke=\"#bbb\"/>\n";

  for (SetKind k : kAllKinds) {
    const Style st = style(k);
    os << "  <g id=\"" << to_string(k) << "\" fill=\"none\" stroke=\"" << st.stroke
       << "\" stroke-width=\"" << st.width << "\"";
    if (*st.dash) os << " stroke-dasharray=\"" << st.dash << "\"";
    os << ">\n";
    for (const auto& iv : sets[k].set.intervals()) {
      for (double r : {iv.lo, iv.hi}) {
        if (r <= 0.0) continue;
        os << "    <circle cx=\"" << c << "\" cy=\"" << c << "\" r=\"" << r * scale << "\"/>\n";
      }
    }
    os << "  </g>\n";
  }

  os << "  <g id=\"eigenvalues\" stroke=\"black\" stroke-width=\"1.5\">\n";
  for (const auto& p : pairs) {
    const double px = c + p.lambda * scale;
    os << "    <line x1=\"" << px - 5 << "\" y1=\"" << c << "\" x2=\"" << px + 5 << "\" y2=\"" << c
       << "\"/>\n";
    os << "    <line x1=\"" << px << "\" y1=\"" << c - 5 << "\" x2=\"" << px << "\" y2=\"" << c + 5
       << "\"/>\n";
  }
  os << "  </g>\n";

  double y = 30.0;
  for (SetKind k : kAllKinds) {
    const Style st = style(k);
    os << "  <line x1=\"" << kSize + 10 << "\" y1=\"" << y << "\" x2=\"" << kSize + 50 << "\" y2=\""
       << y << "\" stroke=\"" << st.stroke << "\" stroke-width=\"" << st.width << "\"";
    if (*st.dash) os << " stroke-dasharray=\"" << st.dash << "\"";
    os << "/>\n";
    os << "  <text x=\"" << kSize + 58 << "\" y=\"" << y + 4 << "\" font-size=\"13\">"
       << to_string(k) << " " << fixed4(sets[k].radius) << "</text>\n";
    y += 22.0;
  }
  os << "</svg>\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Commands

CommandResult cmd_info(const Tensor& a, const RunConfig& cfg) {
  const Json info = info_json(a, cfg.oracle.seed);
  if (cfg.format == Format::Structured) {
    Json doc;
    doc["meta"] = meta_json(cfg);
    doc["info"] = info;
    return structured(doc);
  }
  std::ostringstream os;
  os << "order m:           " << a.order() << "\n"
     << "dimension n:       " << a.dim() << "\n"
     << "entries:           " << a.size() << "\n"
     << "nonnegative:       " << bool_word(info["nonnegative"]) << "\n"
     << "symmetric:         " << bool_word(info["symmetric"]) << "\n"
     << "weakly symmetric:  " << bool_word(info["weakly_symmetric"]) << " (seed "
     << info["weak_symmetry_test"]["seed"].get<std::uint64_t>() << ", "
     << info["weak_symmetry_test"]["trials"].get<int>() << " trials, max residual "
     << info["weak_symmetry_test"]["max_residual"].get<double>() << ")\n";
  return {os.str(), "", exit_code::kOk};
}

CommandResult cmd_sets(const Tensor& a, const RunConfig& cfg) {
  const AllSets sets = all_sets(a);
  switch (cfg.format) {
    case Format::Structured: {
      Json doc;
      doc["meta"] = meta_json(cfg);
      doc["sets"] = sets_json(sets);
      return structured(doc);
    }
    case Format::PlotData: return {plot_data(sets), "", exit_code::kOk};
    case Format::Svg: {
      std::vector<ZEigenPair> pairs;
      if (a.dim() == 2) pairs = circle_solve(a);
      return {render_svg(sets, pairs), "", exit_code::kOk};
    }
    case Format::Text: break;
  }
  std::ostringstream os;
  os << "set     radius    intervals\n";
  for (SetKind k : kAllKinds) {
    const SetReport& rep = sets[k];
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-6s  %-8s  ", rep.name().c_str(), fixed4(rep.radius).c_str());
    os << buf;
    bool first = true;
    for (const auto& iv : rep.set.intervals()) {
      os << (first ? "" : " u ") << '[' << fixed4(iv.lo) << ", " << fixed4(iv.hi) << ']';
      first = false;
    }
    os << (first ? "{}" : "") << "\n";
  }
  return {os.str(), "", exit_code::kOk};
}

CommandResult cmd_bounds(const Tensor& a, const RunConfig& cfg) {
  const BoundReport rep = bound_report(a, cfg.oracle.seed);
  if (cfg.format == Format::Structured) {
    Json doc;
    doc["meta"] = meta_json(cfg);
    doc["bounds"] = bounds_json(rep);
    return structured(doc);
  }
  std::ostringstream os;
  auto row = [&](const char* name, const char* origin, const BoundValue& b) {
    char buf[128];
    const std::string where = "i=" + std::to_string(b.row + 1) +
                              (b.column ? ", j=" + std::to_string(*b.column + 1) : std::string());
    std::snprintf(buf, sizeof buf, "%-10s %-10s %-28s %s\n", name, fixed4(b.value).c_str(), origin,
                  where.c_str());
    os << buf;
  };
  os << "bound      value      from                         witness\n";
  row("Omega_max", "Omega set", rep.omega.value);
  row("Zhao", "Psi set", rep.zhao);
  row("Wang", "L set", rep.wang);
  row("maxR", "K set (max row sum)", rep.maxR);
  os << "nonnegative: " << bool_word(rep.nonnegative)
     << ", weakly symmetric: " << bool_word(rep.weak_symmetry.weakly_symmetric) << "\n";
  if (!rep.applicable())
    os << "note: values bound the Z-spectral radius only for weakly symmetric nonnegative tensors\n";
  return {os.str(), "", exit_code::kOk};
}

CommandResult cmd_zeig(const Tensor& a, const RunConfig& cfg) {
  const auto pairs = run_oracle(a, cfg);
  if (cfg.format == Format::Structured) {
    Json doc;
    doc["meta"] = meta_json(cfg);
    doc["eigenpairs"] = eigenpairs_json(pairs);
    return structured(doc);
  }
  return {eigenpair_table(pairs), "", exit_code::kOk};
}

CommandResult cmd_verify(const Tensor& a, const RunConfig& cfg) {
  const auto pairs = run_oracle(a, cfg);
  AllSets sets = all_sets(a);
  if (cfg.corrupt) {
    SetReport& rep = sets[*cfg.corrupt];
    rep.set = rep.set.scaled(0.5);
    rep.radius = interval_sup(rep.set);
  }
  const BoundReport bounds = bound_report(a, cfg.oracle.seed);
  Verification doc = verify_inclusion(a, pairs, sets, bounds, cfg.slack);
  doc.chain = inclusion_chain_check(sets);

  CommandResult out;
  out.exit_code = doc.passed() ? exit_code::kOk : exit_code::kVerificationFailed;
  if (cfg.format == Format::Structured) {
    Json j;
    j["meta"] = meta_json(cfg);
    j["info"] = info_json(a, cfg.oracle.seed);
    j["sets"] = sets_json(sets);
    j["bounds"] = bounds_json(bounds);
    j["eigenpairs"] = eigenpairs_json(pairs);
    j["verification"] = verification_json(doc);
    out.output = j.dump(2) + "\n";
    return out;
  }

  std::ostringstream os;
  os << eigenpair_table(pairs) << "\n";
  os << "containment (|lambda| against each set" << (doc.bounds_checked ? " and bound" : "")
     << ")\n";
  for (const auto& c : doc.cells) {
    if (c.pass) continue;
    os << "  FAIL pair " << c.pair + 1 << " " << c.target << ": |lambda| = " << fixed4(c.value)
       << ", limit " << fixed4(c.limit) << "\n";
  }
  os << "  " << doc.cells.size() << " cells checked, "
     << std::count_if(doc.cells.begin(), doc.cells.end(), [](const auto& c) { return !c.pass; })
     << " failing\n";
  os << "inclusion chain Omega <= Psi <= L <= K: " << (doc.chain->holds ? "holds" : "VIOLATED")
     << "\n";
  for (const auto& v : doc.chain->violations)
    os << "  " << to_string(v.inner) << " not inside " << to_string(v.outer) << " at ["
       << fixed4(v.offending.lo) << ", " << fixed4(v.offending.hi) << "]\n";
  os << (doc.passed() ? "verified" : "verification FAILED") << "\n";
  out.output = os.str();
  return out;
}

CommandResult run(const RunConfig& cfg) {
  try {
    const Tensor a = load_tensor(cfg.input);
    if (cfg.subcommand == "info") return cmd_info(a, cfg);
    if (cfg.subcommand == "sets") return cmd_sets(a, cfg);
    if (cfg.subcommand == "bounds") return cmd_bounds(a, cfg);
    if (cfg.subcommand == "zeig") return cmd_zeig(a, cfg);
    if (cfg.subcommand == "verify") return cmd_verify(a, cfg);
    return {"", "unknown subcommand '" + cfg.subcommand + "'", exit_code::kInputError};
  } catch (const ParseError& e) {
    return {"", cfg.input + ": " + e.what(), exit_code::kInputError};
  } catch (const std::invalid_argument& e) {
    return {"", cfg.input + ": " + e.what(), exit_code::kInputError};
  }
}

}  // namespace zloc::cli
