#include "symcert/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "symcert/error.hpp"
#include "symcert/parser.hpp"

namespace symcert {

namespace {

bool projected(const Unknown& u, const std::vector<std::string>& projection) {
  if (projection.empty()) return true;
  const std::string shown = u.display();
  return std::any_of(projection.begin(), projection.end(),
                     [&](const std::string& p) { return p == u.name || p == shown; });
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError(Stage::Io, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError(Stage::Io, "cannot write '" + path + "'");
  out << text;
  if (!out.flush()) throw SpecError(Stage::Io, "cannot write '" + path + "'");
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

PipelineResult run_pipeline(std::string_view source, const PipelineOptions& options) {
  if (options.width < 1 || options.width > kMaxWidth) {
    throw SpecError(Stage::Execute, "width must be between 1 and " + std::to_string(kMaxWidth));
  }
  const Program program = parse_source(source);
  ExecOptions exec;
  exec.width = options.width;
  ExecResult executed = execute(program, exec);

  PipelineResult result;
  result.cnf = tseitin(executed.store, executed.assertion, options.tseitin);
  for (const Unknown& u : executed.registry) {
    NamedVars named;
    named.name = u.display();
    named.is_boolean = u.is_boolean;
    for (const auto bit : u.bits) named.vars.push_back(static_cast<int>(bit));
    result.cnf.name_map.push_back(std::move(named));
  }
  result.prints = std::move(executed.prints);
  result.registry = std::move(executed.registry);
  result.exec_stats = executed.stats;
  result.formula_nodes = executed.store.node_count();

  switch (options.mode) {
    case Mode::DimacsOnly:
      break;
    case Mode::Solve: {
      SolveOutcome out = options.solver_command
                             ? solve_external(result.cnf, *options.solver_command, options.budget)
                             : solve(result.cnf, options.budget, options.solver);
      result.status = out.status;
      result.solver_stats = out.stats;
      if (out.status == SatStatus::Sat) {
        result.models.push_back(std::move(out.model));
        result.reported = result.registry;
      }
      break;
    }
    case Mode::AllModels: {
      if (options.solver_command) {
        throw SpecError(Stage::Solve, "model enumeration needs the embedded solver");
      }
      if (options.model_limit < 1) throw SpecError(Stage::Solve, "model limit must be at least 1");
      std::vector<int> projection;
      for (const Unknown& u : result.registry) {
        if (!projected(u, options.projection)) continue;
        result.reported.push_back(u);
        for (const auto bit : u.bits) projection.push_back(static_cast<int>(bit));
      }
      for (const std::string& p : options.projection) {
        const bool known = std::any_of(result.registry.begin(), result.registry.end(), [&](const Unknown& u) {
          return p == u.name || p == u.display();
        });
        if (!known) throw SpecError(Stage::Solve, "projection names no unknown: '" + p + "'");
      }
      Enumeration e = enumerate_models(result.cnf, projection, options.model_limit, options.budget, options.solver);
      result.models = std::move(e.models);
      result.enumeration_complete = e.complete;
      result.solver_stats = e.stats;
      if (!result.models.empty()) {
        result.status = SatStatus::Sat;
      } else {
        result.status = e.complete ? SatStatus::Unsat : SatStatus::Unknown;
      }
      break;
    }
  }
  return result;
}

std::string unknown_value(const Unknown& u, const Assignment& assignment) {
  auto bit = [&](std::uint32_t var) {
    const auto v = assignment.get(var);
    if (!v) throw std::invalid_argument("model does not cover " + u.display());
    return *v;
  };
  if (u.is_boolean) return bit(u.bits.at(0)) ? "true" : "false";
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < u.bits.size(); ++i) {
    if (bit(u.bits[i])) value |= std::uint64_t{1} << i;
  }
  return std::to_string(value);
}

std::string report_model(const std::vector<Unknown>& registry, const Assignment& assignment) {
  std::string text;
  for (const Unknown& u : registry) {
    text += u.display();
    text += '=';
    text += unknown_value(u, assignment);
    text += ";\n";
  }
  return text;
}

std::string format_print(const PrintRecord& p) { return p.text + "=" + format_ground(p.value) + ";"; }

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto start = std::chrono::steady_clock::now();
    const std::string source = read_file(config.spec_path);
    PipelineOptions options = config.pipeline;
    if (config.dimacs_path && *config.dimacs_path == "-") {
      options.mode = Mode::DimacsOnly;
    }
    const PipelineResult result = run_pipeline(source, options);

    for (const PrintRecord& p : result.prints) out << format_print(p) << '\n';
    if (config.dimacs_path) {
      const std::string text = write_dimacs(result.cnf, config.dimacs_names);
      if (*config.dimacs_path == "-") {
        out << text;
      } else {
        write_file(*config.dimacs_path, text);
      }
    }

    int code = kExitUnknown;
    switch (result.status) {
      case SatStatus::Sat:
        code = kExitSat;
        for (std::size_t i = 0; i < result.models.size(); ++i) {
          if (options.mode == Mode::AllModels && i > 0) out << '\n';
          out << report_model(result.reported, result.models[i]);
        }
        if (options.mode == Mode::AllModels) {
          err << "c " << result.models.size() << (result.models.size() == 1 ? " model" : " models")
              << (result.enumeration_complete ? " (complete)" : " (limit or budget reached)") << '\n';
        }
        break;
      case SatStatus::Unsat:
        code = kExitUnsat;
        out << "No solution.\n";
        break;
      case SatStatus::Unknown:
        if (options.mode == Mode::DimacsOnly) {
          code = kExitSat;
        } else {
          out << "Unknown: budget exhausted.\n";
        }
        break;
    }

    if (config.stats) {
      err << "c width " << options.width << '\n'
          << "c unknowns " << result.registry.size() << '\n'
          << "c loop-iterations " << result.exec_stats.loop_iterations << '\n'
          << "c formula-nodes " << result.formula_nodes << '\n'
          << "c variables " << result.cnf.num_vars << '\n'
          << "c clauses " << result.cnf.clauses.size() << '\n'
          << "c literals " << result.cnf.literal_count() << '\n';
      if (options.mode != Mode::DimacsOnly) {
        const SolverStats& s = result.solver_stats;
        err << "c conflicts " << s.conflicts << '\n'
            << "c decisions " << s.decisions << '\n'
            << "c propagations " << s.propagations << '\n'
            << "c restarts " << s.restarts << '\n'
            << "c solve-seconds " << s.seconds << '\n';
      }
      err << "c total-seconds " << seconds_since(start) << '\n';
    }
    return code;
  } catch (const SpecError& e) {
    err << config.spec_path << ':' << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace symcert
