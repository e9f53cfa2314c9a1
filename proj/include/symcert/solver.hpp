#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "symcert/assignment.hpp"
#include "symcert/cnf.hpp"

namespace symcert {

/// Resource limits for one solve call. Exhausting either yields Unknown.
struct Budget {
  std::optional<std::uint64_t> max_conflicts;
  std::optional<double> max_seconds;
};

struct SolverOptions {
  /// Assign pure literals at the root before search. The assignments are
  /// permanent, so a solver that used them accepts no further clauses.
  bool pure_literals = true;
  std::uint64_t seed = 0x5eed5a7;
  /// Probability of a random decision variable; 0 keeps search purely VSIDS.
  double random_var_freq = 0.0;
  double var_decay = 0.95;
  double clause_decay = 0.999;
  std::uint32_t restart_unit = 100;
};

struct SolverStats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t learnt_clauses = 0;
  std::uint64_t pure_literals = 0;
  double seconds = 0.0;
};

struct SolveOutcome {
  SatStatus status = SatStatus::Unknown;
  Assignment model;  // set for Sat: every variable 1..num_vars
  SolverStats stats;
};

/// Conflict-driven clause-learning solver: two watched literals (binary
/// clauses in dedicated lists), first-UIP learning with recursive
/// minimisation, VSIDS with lowest-index tie-breaking, phase saving, Luby
/// restarts and LBD-based learnt clause reduction at restarts.
///
/// Variables use DIMACS numbering (1..n). An instance is single-threaded.
/// Clauses may be added between solve() calls unless the first solve
/// assigned pure literals (add_clause then throws std::logic_error).
class CdclSolver {
 public:
  explicit CdclSolver(SolverOptions options = {});

  void reserve_vars(int num_vars);
  int num_vars() const { return static_cast<int>(assigns_.size()); }

  /// Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::span<const int> literals);

  SolveOutcome solve(const Budget& budget = {});

 private:
  using Lit = std::uint32_t;
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = 0xffffffffu;
  static constexpr Lit kNoLit = 0xffffffffu;

  struct Watcher {
    CRef cref;
    Lit blocker;
  };
  struct BinWatcher {
    Lit other;
    CRef cref;
  };

  static Lit make_lit(int var, bool negative) { return static_cast<Lit>(var) * 2 + (negative ? 1 : 0); }
  static int var_of(Lit l) { return static_cast<int>(l >> 1); }
  static bool sign_of(Lit l) { return l & 1; }
  static Lit negate(Lit l) { return l ^ 1; }
  Lit from_dimacs(int l) const { return make_lit(std::abs(l) - 1, l < 0); }

  // 1 true, -1 false, 0 unassigned
  std::int8_t value(Lit l) const { return lit_value_[l]; }
  int level_of(int v) const { return level_[v]; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  // clause arena accessors
  std::uint32_t clause_size(CRef c) const { return arena_[c] >> 2; }
  bool clause_learnt(CRef c) const { return arena_[c] & 1U; }
  bool clause_deleted(CRef c) const { return arena_[c] & 2U; }
  std::uint32_t& clause_lbd(CRef c) { return arena_[c + 1]; }
  float clause_activity(CRef c) const;
  void set_clause_activity(CRef c, float a);
  Lit* clause_lits(CRef c) { return reinterpret_cast<Lit*>(&arena_[c + 3]); }

  CRef alloc_clause(std::span<const Lit> lits, bool learnt);
  void attach(CRef c);
  void enqueue(Lit l, CRef reason);
  CRef propagate();
  void analyze(CRef conflict, std::vector<Lit>& learnt, int& backtrack_level, std::uint32_t& lbd);
  bool lit_redundant(Lit p, std::uint32_t abstract_levels);
  std::uint32_t abstract_level(int v) const { return 1U << (level_[v] & 31); }
  void cancel_until(int level);
  Lit pick_branch();
  void bump_var(int v);
  void bump_clause(CRef c);
  void decay_activities();
  bool assign_pure_literals();
  void reduce_and_collect();
  bool budget_exhausted(const Budget& budget, std::chrono::steady_clock::time_point deadline,
                        bool has_deadline) const;

  // heap over variables ordered by activity, ties to the lower index
  bool heap_less(int a, int b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }
  void heap_insert(int v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  int heap_pop();

  SolverOptions options_;
  std::mt19937_64 rng_;
  bool ok_ = true;
  bool solved_once_ = false;

  std::vector<std::uint32_t> arena_;
  std::uint64_t wasted_words_ = 0;
  std::vector<CRef> originals_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::vector<BinWatcher>> bin_watches_;

  std::vector<std::int8_t> assigns_;  // per var: 1, -1, 0
  std::vector<std::int8_t> lit_value_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<char> saved_phase_;  // 1 = negative
  std::vector<double> activity_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<int> heap_;
  std::vector<int> heap_index_;  // -1 when absent

  std::vector<char> seen_;
  std::vector<Lit> analyze_stack_;
  std::vector<Lit> analyze_toclear_;
  std::vector<int> lbd_stamp_;
  int lbd_counter_ = 0;

  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::size_t max_learnts_ = 0;
  SolverStats stats_;
};

/// Solves a CNF with a fresh embedded solver. A Sat model is checked against
/// every clause before it is returned (std::logic_error if that ever fails).
SolveOutcome solve(const Cnf& cnf, const Budget& budget = {}, const SolverOptions& options = {});

struct Enumeration {
  std::vector<Assignment> models;  // each restricted to the projection
  bool complete = false;           // no further projected model exists
  bool budget_exhausted = false;   // stopped by the budget, list is partial
  SolverStats stats;
};

/// Enumerates pairwise distinct models projected onto `projection` by adding
/// a blocking clause over the projection after each model. Stops after
/// `limit` models (complete stays false unless the next call proved UNSAT).
Enumeration enumerate_models(const Cnf& cnf, std::span<const int> projection, std::size_t limit,
                             const Budget& budget = {}, SolverOptions options = {});

/// Runs `command` (split on whitespace, DIMACS path appended as the last
/// argument) and parses SAT-competition output. Nonzero exit codes are
/// accepted when a status line is present. The budget's time limit kills the
/// process and yields Unknown; any other abnormal termination, unparsable
/// output, or a model that violates a clause throws SpecError(Stage::Solve).
SolveOutcome solve_external(const Cnf& cnf, const std::string& command, const Budget& budget = {});

}  // namespace symcert
