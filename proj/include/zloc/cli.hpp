#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "zloc/bounds.hpp"
#include "zloc/localization.hpp"
#include "zloc/tensor.hpp"
#include "zloc/zeig.hpp"

namespace zloc::cli {

enum class Format { Text, Structured, PlotData, Svg };

std::optional<Format> format_from_string(const std::string& s);

enum class Solver { Auto, Circle, Sshopm };

struct RunConfig {
  std::string subcommand;  // info | sets | bounds | zeig | verify
  std::string input;
  Format format = Format::Text;
  OracleConfig oracle;
  Solver solver = Solver::Auto;
  double slack = 1e-9;  // base slack for eigenvalue containment
  /// Testing hook: halve this set before verification so containment must fail.
  std::optional<SetKind> corrupt;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kInputError = 2;
}  // namespace exit_code

struct CommandResult {
  std::string output;
  std::string error;
  int exit_code = exit_code::kOk;
};

/// Loads cfg.input and dispatches on cfg.subcommand. Never throws for bad
/// input; those map to exit_code::kInputError with the message in error.
CommandResult run(const RunConfig& cfg);

CommandResult cmd_info(const Tensor& a, const RunConfig& cfg);
CommandResult cmd_sets(const Tensor& a, const RunConfig& cfg);
CommandResult cmd_bounds(const Tensor& a, const RunConfig& cfg);
CommandResult cmd_zeig(const Tensor& a, const RunConfig& cfg);
CommandResult cmd_verify(const Tensor& a, const RunConfig& cfg);

// Structured-document pieces, field order fixed.
using Json = nlohmann::ordered_json;

Json info_json(const Tensor& a, std::uint64_t seed);
Json set_json(const SetReport& rep);
Json sets_json(const AllSets& sets);
Json bounds_json(const BoundReport& rep);
Json eigenpairs_json(const std::vector<ZEigenPair>& pairs);
Json verification_json(const Verification& doc);

/// CSV with header set,inner_radius,outer_radius.
std::string plot_data(const AllSets& sets);
std::string render_svg(const AllSets& sets, const std::vector<ZEigenPair>& pairs);

}  // namespace zloc::cli
