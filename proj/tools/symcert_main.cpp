#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "symcert/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"symcert: solve constraint specifications via SAT"};
  symcert::RunConfig config;
  auto& pipeline = config.pipeline;

  std::string dimacs;
  std::string solver;
  double timeout = 0;
  std::uint64_t conflicts = 0;
  bool all_models = false;
  bool dimacs_only = false;
  bool embedded = false;

  app.add_option("spec", config.spec_path, "Specification file ('-' for standard input)")->required();
  app.add_option("-w,--width", pipeline.width, "Bit width of naturals")->capture_default_str()
      ->check(CLI::Range(1u, symcert::kMaxWidth));
  app.add_flag("-a,--all-models", all_models, "Enumerate all models");
  app.add_option("-n,--limit", pipeline.model_limit, "Stop after N models")->check(CLI::PositiveNumber);
  app.add_option("-p,--project", pipeline.projection,
                 "Unknown (e.g. bX or bX[2]) distinguishing models in enumeration; repeatable");
  app.add_option("--dimacs", dimacs, "Write the CNF to PATH ('-': print it and skip solving)");
  app.add_flag("--dimacs-only", dimacs_only, "Encode only, do not solve");
  app.add_flag("--names", config.dimacs_names, "Add 'c name' comments mapping unknowns to variables");
  app.add_option("--solver", solver,
                 std::string("External DIMACS solver command (default: $") + symcert::kSolverEnvVar + ")");
  app.add_flag("--embedded", embedded, "Use the embedded solver even if $" + std::string(symcert::kSolverEnvVar) + " is set");
  app.add_option("-t,--timeout", timeout, "Time budget in seconds")->check(CLI::NonNegativeNumber);
  app.add_option("--conflicts", conflicts, "Conflict budget of the embedded solver");
  app.add_flag("--stats", config.stats, "Print encoding and solver statistics to stderr");
  app.add_flag("--polarity", pipeline.tseitin.polarity, "Polarity-aware (Plaisted-Greenbaum) encoding");
  app.add_option("--seed", pipeline.solver.seed, "Random seed of the embedded solver");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : symcert::kExitUsage;
  }

  if (all_models) pipeline.mode = symcert::Mode::AllModels;
  if (dimacs_only) pipeline.mode = symcert::Mode::DimacsOnly;
  if (!dimacs.empty()) config.dimacs_path = dimacs;
  if (dimacs_only && !config.dimacs_path) config.dimacs_path = "-";
  if (timeout > 0) pipeline.budget.max_seconds = timeout;
  if (conflicts > 0) pipeline.budget.max_conflicts = conflicts;
  if (!solver.empty()) {
    pipeline.solver_command = solver;
  } else if (const char* env = std::getenv(symcert::kSolverEnvVar); env && *env && !embedded && !all_models) {
    pipeline.solver_command = std::string(env);
  }
  return symcert::run(config, std::cout, std::cerr);
}
