#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <CLI11.hpp>

#include "symcert/error.hpp"
#include "symcert/solver.hpp"

// Standalone DIMACS solver around the embedded CDCL engine. Prints
// SAT-competition output and exits 10 (SAT), 20 (UNSAT) or 0 (unknown).
int main(int argc, char** argv) {
  CLI::App app{"symcert-sat: DIMACS CNF solver"};
  std::string path;
  double timeout = 0;
  symcert::SolverOptions options;
  bool stats = false;
  app.add_option("cnf", path, "DIMACS file ('-' for standard input)")->required();
  app.add_option("-t,--timeout", timeout, "Time budget in seconds")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", options.seed, "Random seed");
  app.add_flag("--stats", stats, "Print statistics as comment lines");
  CLI11_PARSE(app, argc, argv);

  try {
    std::string text;
    if (path == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        std::cerr << "cannot read '" << path << "'\n";
        return 1;
      }
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    const symcert::Cnf cnf = symcert::parse_dimacs(text);
    symcert::Budget budget;
    if (timeout > 0) budget.max_seconds = timeout;
    const symcert::SolveOutcome out = symcert::solve(cnf, budget, options);
    if (stats) {
      std::cout << "c conflicts " << out.stats.conflicts << "\nc decisions " << out.stats.decisions
                << "\nc seconds " << out.stats.seconds << '\n';
    }
    std::cout << symcert::write_dimacs_model(out.status, out.model, cnf.num_vars);
    switch (out.status) {
      case symcert::SatStatus::Sat: return 10;
      case symcert::SatStatus::Unsat: return 20;
      case symcert::SatStatus::Unknown: return 0;
    }
  } catch (const symcert::SpecError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
