#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symcert/cnf.hpp"
#include "symcert/interpreter.hpp"
#include "symcert/solver.hpp"

namespace symcert {

enum class Mode { Solve, AllModels, DimacsOnly };

struct PipelineOptions {
  unsigned width = 8;
  Mode mode = Mode::Solve;
  std::size_t model_limit = std::numeric_limits<std::size_t>::max();
  /// External solver command; the embedded solver is used when empty.
  std::optional<std::string> solver_command;
  Budget budget;
  TseitinOptions tseitin;
  SolverOptions solver;
  /// Unknowns (base name such as `bX`, or a display name such as `bX[2]`)
  /// that all-models enumeration distinguishes. Empty means every unknown.
  std::vector<std::string> projection;
};

struct PipelineResult {
  /// Unknown in DimacsOnly mode.
  SatStatus status = SatStatus::Unknown;
  std::vector<PrintRecord> prints;
  std::vector<Unknown> registry;
  Cnf cnf;
  /// Solve: at most one full model. AllModels: projected models.
  std::vector<Assignment> models;
  /// Registry entries covered by the models (all of them in Solve mode).
  std::vector<Unknown> reported;
  bool enumeration_complete = false;
  ExecStats exec_stats;
  SolverStats solver_stats;
  std::size_t formula_nodes = 0;
};

/// lex, parse, execute, encode and (unless DimacsOnly) solve. Stage failures
/// throw SpecError; budget exhaustion is reported as status Unknown.
PipelineResult run_pipeline(std::string_view source, const PipelineOptions& options);

/// Decodes one unknown: booleans as true/false, naturals as unsigned decimal.
std::string unknown_value(const Unknown& u, const Assignment& assignment);

/// One `name[i]=value;` line per unknown, in registry order, each ending in a newline.
std::string report_model(const std::vector<Unknown>& registry, const Assignment& assignment);

std::string format_print(const PrintRecord& p);

// process exit codes
inline constexpr int kExitSat = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnsat = 20;
inline constexpr int kExitUnknown = 30;

/// Name of the environment variable holding a default external solver command.
inline constexpr const char* kSolverEnvVar = "SYMCERT_SOLVER";

struct RunConfig {
  std::string spec_path;  // "-" reads standard input
  PipelineOptions pipeline;
  std::optional<std::string> dimacs_path;  // "-" writes to the output stream
  bool dimacs_names = false;
  bool stats = false;
};

/// Runs one spec file and writes the report to out, diagnostics and stats to
/// err. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace symcert
