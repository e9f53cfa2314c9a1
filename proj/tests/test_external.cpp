#include <doctest.h>

#include <chrono>
#include <random>
#include <string>

#include "properties.hpp"
#include "symcert/error.hpp"
#include "symcert/solver.hpp"

using namespace symcert;

namespace {

const std::string kSat = SYMCERT_SAT_BIN;

std::string fixture(const char* name) { return std::string(SYMCERT_FIXTURES) + "/" + name; }

Cnf make_cnf(int vars, std::vector<std::vector<int>> clauses) {
  Cnf cnf;
  cnf.num_vars = vars;
  cnf.clauses = std::move(clauses);
  return cnf;
}

Stage failure_stage(const Cnf& cnf, const std::string& command, Budget budget = {}) {
  try {
    solve_external(cnf, command, budget);
  } catch (const SpecError& e) {
    return e.stage();
  }
  FAIL("external solver accepted: " << command);
  return Stage::Io;
}

}  // namespace

TEST_CASE("the bundled DIMACS solver runs as an external solver") {
  const SolveOutcome sat = solve_external(make_cnf(3, {{1, 2}, {-1}, {-2, 3}}), kSat);
  REQUIRE(sat.status == SatStatus::Sat);
  CHECK(sat.model.get(2) == true);
  CHECK(sat.model.get(3) == true);
  CHECK(solve_external(make_cnf(1, {{1}, {-1}}), kSat).status == SatStatus::Unsat);
  CHECK(solve_external(make_cnf(0, {}), kSat).status == SatStatus::Sat);
}

TEST_CASE("external and embedded solvers agree") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 40; ++i) {
    const Cnf cnf = testing::random_cnf(rng, 20, 85, 3);
    const SolveOutcome embedded = solve(cnf);
    const SolveOutcome external = solve_external(cnf, kSat + " --seed 1");
    CHECK(embedded.status == external.status);
    if (external.status == SatStatus::Sat) CHECK(satisfies(cnf, external.model));
  }
}

TEST_CASE("a shell script speaking the output format is accepted") {
  CHECK(solve_external(make_cnf(2, {{1, 2}}), fixture("unsat-solver.sh")).status == SatStatus::Unsat);
}

TEST_CASE("abnormal solvers are reported") {
  const Cnf cnf = make_cnf(2, {{1, 2}});
  CHECK(failure_stage(cnf, fixture("crash-solver.sh")) == Stage::Solve);
  CHECK(failure_stage(cnf, fixture("garbage-solver.sh")) == Stage::Solve);
  CHECK(failure_stage(cnf, fixture("liar-solver.sh")) == Stage::Solve);  // model violates (1 2)
  CHECK(failure_stage(cnf, "/nonexistent/solver-binary") == Stage::Solve);
  CHECK_THROWS_AS(solve_external(cnf, ""), SpecError);
}

TEST_CASE("a timeout kills the solver and yields unknown") {
  Budget budget;
  budget.max_seconds = 0.5;
  const auto start = std::chrono::steady_clock::now();
  const SolveOutcome out = solve_external(make_cnf(2, {{1, 2}}), fixture("slow-solver.sh"), budget);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(out.status == SatStatus::Unknown);
  CHECK(elapsed < 5.0);
}
