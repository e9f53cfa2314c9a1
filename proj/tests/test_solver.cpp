#include <doctest.h>

#include <random>
#include <set>

#include "properties.hpp"
#include "symcert/solver.hpp"

using namespace symcert;

namespace {

Cnf make_cnf(int vars, std::vector<std::vector<int>> clauses) {
  Cnf cnf;
  cnf.num_vars = vars;
  cnf.clauses = std::move(clauses);
  return cnf;
}

// pigeonhole: p pigeons into p-1 holes, unsatisfiable and needs real search
Cnf pigeonhole(int p) {
  const int h = p - 1;
  auto var = [&](int i, int j) { return i * h + j + 1; };
  Cnf cnf;
  cnf.num_vars = p * h;
  for (int i = 0; i < p; ++i) {
    std::vector<int> some;
    for (int j = 0; j < h; ++j) some.push_back(var(i, j));
    cnf.clauses.push_back(some);
  }
  for (int j = 0; j < h; ++j) {
    for (int a = 0; a < p; ++a) {
      for (int b = a + 1; b < p; ++b) cnf.clauses.push_back({-var(a, j), -var(b, j)});
    }
  }
  return cnf;
}

}  // namespace

TEST_CASE("trivial instances") {
  CHECK(solve(make_cnf(1, {{1}, {-1}})).status == SatStatus::Unsat);
  CHECK(solve(make_cnf(0, {})).status == SatStatus::Sat);
  CHECK(solve(make_cnf(3, {})).status == SatStatus::Sat);
  CHECK(solve(make_cnf(2, {{}})).status == SatStatus::Unsat);
  CHECK(solve(make_cnf(2, {{1, -1}})).status == SatStatus::Sat);

  const SolveOutcome out = solve(make_cnf(3, {{1, 2}, {-1}, {-2, 3}}));
  REQUIRE(out.status == SatStatus::Sat);
  CHECK(out.model.get(1) == false);
  CHECK(out.model.get(2) == true);
  CHECK(out.model.get(3) == true);
}

TEST_CASE("models cover every variable") {
  const Cnf cnf = make_cnf(5, {{2, 3}});
  const SolveOutcome out = solve(cnf);
  REQUIRE(out.status == SatStatus::Sat);
  for (std::uint32_t v = 1; v <= 5; ++v) CHECK(out.model.contains(v));
  CHECK(satisfies(cnf, out.model));
}

TEST_CASE("random instances agree with brute force") {
  const auto r = testing::check_solver(2000, 12, 60, 31);
  INFO(r.failure);
  CHECK(r.ok);
  CHECK(r.checked == 2000);
}

TEST_CASE("pigeonhole needs search and is refuted") {
  for (int p = 3; p <= 8; ++p) {
    CAPTURE(p);
    const SolveOutcome out = solve(pigeonhole(p));
    CHECK(out.status == SatStatus::Unsat);
    if (p >= 5) CHECK(out.stats.conflicts > 0);
  }
  SolverOptions plain;
  plain.pure_literals = false;
  CHECK(solve(pigeonhole(6), {}, plain).status == SatStatus::Unsat);
}

TEST_CASE("budgets produce unknown") {
  Budget tiny;
  tiny.max_conflicts = 1;
  CHECK(solve(pigeonhole(9), tiny).status == SatStatus::Unknown);
  Budget instant;
  instant.max_seconds = 0.0;
  CHECK(solve(pigeonhole(10), instant).status == SatStatus::Unknown);
}

TEST_CASE("incremental clauses") {
  SolverOptions incremental;
  incremental.pure_literals = false;
  CdclSolver s(incremental);
  s.reserve_vars(3);
  const int c1[] = {1, 2};
  const int c2[] = {-1, 3};
  CHECK(s.add_clause(c1));
  CHECK(s.add_clause(c2));
  CHECK(s.solve().status == SatStatus::Sat);
  const int c3[] = {-3};
  const int c4[] = {-2};
  s.add_clause(c3);
  CHECK(s.solve().status == SatStatus::Sat);
  CHECK_FALSE(s.add_clause(c4));
  CHECK(s.solve().status == SatStatus::Unsat);

  // root pure literal assignments would make later clauses unsound
  CdclSolver pure;
  pure.add_clause(c1);
  pure.add_clause(c2);
  CHECK(pure.solve().status == SatStatus::Sat);
  CHECK_THROWS_AS(pure.add_clause(c3), std::logic_error);
}

TEST_CASE("enumeration counts match brute force") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 300; ++i) {
    const int nv = 1 + static_cast<int>(rng() % 10);
    const Cnf cnf = testing::random_cnf(rng, nv, static_cast<int>(rng() % 25), 4);
    std::vector<int> projection;
    for (int v = 1; v <= nv; ++v) {
      if (rng() % 3 != 0) projection.push_back(v);
    }
    const Enumeration e = enumerate_models(cnf, projection, 10000);
    CAPTURE(i);
    CHECK(e.complete);
    CHECK(e.models.size() == testing::count_projected_models(cnf, projection));
    std::set<std::vector<int>> distinct;
    for (const auto& m : e.models) {
      std::vector<int> key;
      for (int v : projection) key.push_back(m.get(static_cast<std::uint32_t>(v)).value() ? v : -v);
      distinct.insert(key);
    }
    CHECK(distinct.size() == e.models.size());
  }
}

TEST_CASE("enumeration limit") {
  const Cnf cnf = make_cnf(4, {});
  const std::vector<int> projection = {1, 2, 3, 4};
  const Enumeration some = enumerate_models(cnf, projection, 5);
  CHECK(some.models.size() == 5);
  CHECK_FALSE(some.complete);
  const Enumeration all = enumerate_models(cnf, projection, 16);
  CHECK(all.models.size() == 16);
  CHECK(all.complete);
  const Enumeration none = enumerate_models(make_cnf(1, {{1}, {-1}}), {}, 3);
  CHECK(none.models.empty());
  CHECK(none.complete);
}

TEST_CASE("solving is deterministic") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const Cnf cnf = testing::random_cnf(rng, 40, 170, 3);
    const SolveOutcome a = solve(cnf);
    const SolveOutcome b = solve(cnf);
    CHECK(a.status == b.status);
    CHECK(a.model == b.model);
    CHECK(a.stats.conflicts == b.stats.conflicts);
    CHECK(a.stats.decisions == b.stats.decisions);
  }
  const SolveOutcome p1 = solve(pigeonhole(7));
  const SolveOutcome p2 = solve(pigeonhole(7));
  CHECK(p1.stats.conflicts == p2.stats.conflicts);
}
