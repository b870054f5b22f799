#include <iostream>

#include "CLI11.hpp"
#include "zloc/cli.hpp"

int main(int argc, char** argv) {
  using namespace zloc;
  cli::RunConfig cfg;
  std::string format = "text";
  std::string solver = "auto";
  std::string corrupt;
  double shift = 0.0;

  CLI::App app{"Z-eigenvalue localization sets and spectral radius bounds for real tensors"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "Tensor text file")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", format, "text | structured | plot-data | svg")
        ->check(CLI::IsMember({"text", "structured", "json", "plot-data", "svg"}));
    sub->add_option("--seed", cfg.oracle.seed, "Seed for weak-symmetry sampling and restarts");
    sub->add_option("--starts", cfg.oracle.starts, "Random restarts for the power method")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.oracle.tol, "Iterate-change tolerance for the power method")
        ->check(CLI::PositiveNumber);
    sub->add_option("--slack", cfg.slack, "Base slack for eigenvalue containment")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_option("--solver", solver, "auto | circle | sshopm")
        ->check(CLI::IsMember({"auto", "circle", "sshopm"}));
    sub->add_option("--max-iter", cfg.oracle.max_iter, "Power-method iteration cap")
        ->check(CLI::PositiveNumber);
    sub->add_option("--shift", shift, "Shift magnitude (default: automatic)");
  };

  auto* info = app.add_subcommand("info", "Order, dimension and structural predicates");
  auto* sets = app.add_subcommand("sets", "K, L, Psi and Omega localization sets");
  auto* bounds = app.add_subcommand("bounds", "Upper bounds on the Z-spectral radius");
  auto* zeig = app.add_subcommand("zeig", "Compute Z-eigenpairs");
  auto* verify = app.add_subcommand("verify", "Check computed eigenvalues against every set and bound");
  for (auto* sub : {info, sets, bounds, zeig, verify}) add_common(sub);
  add_oracle(zeig);
  add_oracle(verify);
  verify->add_option("--corrupt", corrupt, "Testing hook: shrink the named set before checking")
      ->check(CLI::IsMember({"K", "L", "Psi", "Omega"}))
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::exit_code::kInputError;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.format = *cli::format_from_string(format);
  cfg.solver = solver == "circle" ? cli::Solver::Circle
               : solver == "sshopm" ? cli::Solver::Sshopm
                                    : cli::Solver::Auto;
  if (shift > 0.0) cfg.oracle.shift = shift;
  if (!corrupt.empty()) cfg.corrupt = set_kind_from_string(corrupt);

  const cli::CommandResult res = cli::run(cfg);
  std::cout << res.output;
  if (!res.error.empty()) std::cerr << "zloc: " << res.error << "\n";
  return res.exit_code;
}
