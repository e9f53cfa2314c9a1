#include "symcert/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace symcert {

namespace {

// Luby sequence 1 1 2 1 1 2 4 1 1 2 ... scaled by base^k.
double luby(double base, std::uint64_t x) {
  std::uint64_t size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(base, seq);
}

constexpr std::uint32_t kHeaderWords = 3;

}  // namespace

CdclSolver::CdclSolver(SolverOptions options) : options_(options), rng_(options.seed) {}

float CdclSolver::clause_activity(CRef c) const {
  float a;
  std::memcpy(&a, &arena_[c + 2], sizeof a);
  return a;
}

void CdclSolver::set_clause_activity(CRef c, float a) { std::memcpy(&arena_[c + 2], &a, sizeof a); }

void CdclSolver::reserve_vars(int n) {
  while (num_vars() < n) {
    const int v = num_vars();
    assigns_.push_back(0);
    lit_value_.push_back(0);
    lit_value_.push_back(0);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    saved_phase_.push_back(1);
    activity_.push_back(0.0);
    seen_.push_back(0);
    lbd_stamp_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    bin_watches_.emplace_back();
    bin_watches_.emplace_back();
    heap_index_.push_back(-1);
    heap_insert(v);
  }
}

CdclSolver::CRef CdclSolver::alloc_clause(std::span<const Lit> lits, bool learnt) {
  const auto cref = static_cast<CRef>(arena_.size());
  arena_.push_back((static_cast<std::uint32_t>(lits.size()) << 2) | (learnt ? 1U : 0U));
  arena_.push_back(0);
  arena_.push_back(0);
  for (const Lit l : lits) arena_.push_back(l);
  set_clause_activity(cref, 0.0F);
  return cref;
}

void CdclSolver::attach(CRef c) {
  Lit* lits = clause_lits(c);
  if (clause_size(c) == 2) {
    bin_watches_[negate(lits[0])].push_back({lits[1], c});
    bin_watches_[negate(lits[1])].push_back({lits[0], c});
    return;
  }
  watches_[negate(lits[0])].push_back({c, lits[1]});
  watches_[negate(lits[1])].push_back({c, lits[0]});
}

bool CdclSolver::add_clause(std::span<const int> literals) {
  if (stats_.pure_literals > 0) throw std::logic_error("clause added after pure literal elimination");
  if (!ok_) return false;
  cancel_until(0);
  int max_var = 0;
  for (const int l : literals) {
    if (l == 0) throw std::invalid_argument("literal 0 in clause");
    max_var = std::max(max_var, std::abs(l));
  }
  reserve_vars(max_var);

  std::vector<Lit> lits;
  lits.reserve(literals.size());
  for (const int l : literals) lits.push_back(from_dimacs(l));
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == negate(lits[i])) return true;  // tautology
    if (value(lits[i]) > 0) return true;                                   // satisfied at root
    if (value(lits[i]) == 0) kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    ok_ = propagate() == kNoReason;
    return ok_;
  }
  const CRef c = alloc_clause(kept, false);
  originals_.push_back(c);
  attach(c);
  return true;
}

void CdclSolver::enqueue(Lit l, CRef reason) {
  const int v = var_of(l);
  assigns_[v] = sign_of(l) ? -1 : 1;
  lit_value_[l] = 1;
  lit_value_[negate(l)] = -1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

CdclSolver::CRef CdclSolver::propagate() {
  CRef conflict = kNoReason;
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];  // p is now true; clauses containing ~p are visited
    const Lit false_lit = negate(p);
    ++stats_.propagations;

    for (const BinWatcher& bw : bin_watches_[p]) {
      const std::int8_t v = value(bw.other);
      if (v > 0) continue;
      if (v < 0) {
        qhead_ = trail_.size();
        return bw.cref;
      }
      enqueue(bw.other, bw.cref);
    }

    auto& ws = watches_[p];
    std::size_t i = 0;
    std::size_t j = 0;
    const std::size_t n = ws.size();
    while (i < n) {
      const Watcher w = ws[i];
      if (value(w.blocker) > 0) {
        ws[j++] = ws[i++];
        continue;
      }
      const CRef cref = w.cref;
      Lit* lits = clause_lits(cref);
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      ++i;
      const Lit first = lits[0];
      if (first != w.blocker && value(first) > 0) {
        ws[j++] = {cref, first};
        continue;
      }
      const std::uint32_t size = clause_size(cref);
      bool moved = false;
      for (std::uint32_t k = 2; k < size; ++k) {
        if (value(lits[k]) >= 0) {
          lits[1] = lits[k];
          lits[k] = false_lit;
          watches_[negate(lits[1])].push_back({cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {cref, first};
      if (value(first) < 0) {
        conflict = cref;
        qhead_ = trail_.size();
        while (i < n) ws[j++] = ws[i++];
      } else {
        enqueue(first, cref);
      }
    }
    ws.resize(j);
    if (conflict != kNoReason) return conflict;
  }
  return conflict;
}

void CdclSolver::bump_var(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_index_[v] >= 0) heap_up(static_cast<std::size_t>(heap_index_[v]));
}

void CdclSolver::bump_clause(CRef c) {
  const float a = clause_activity(c) + static_cast<float>(clause_inc_);
  set_clause_activity(c, a);
  if (a > 1e20F) {
    for (const CRef l : learnts_) set_clause_activity(l, clause_activity(l) * 1e-20F);
    clause_inc_ *= 1e-20;
  }
}

void CdclSolver::decay_activities() {
  var_inc_ /= options_.var_decay;
  clause_inc_ /= options_.clause_decay;
}

void CdclSolver::analyze(CRef conflict, std::vector<Lit>& learnt, int& backtrack_level,
                         std::uint32_t& lbd) {
  learnt.clear();
  learnt.push_back(kNoLit);
  int path_count = 0;
  Lit p = kNoLit;
  std::size_t index = trail_.size();
  CRef reason = conflict;

  do {
    if (clause_learnt(reason)) bump_clause(reason);
    const std::uint32_t size = clause_size(reason);
    const Lit* lits = clause_lits(reason);
    for (std::uint32_t k = 0; k < size; ++k) {
      const Lit q = lits[k];
      if (q == p) continue;
      const int v = var_of(q);
      if (seen_[v] || level_[v] == 0) continue;
      bump_var(v);
      seen_[v] = 1;
      if (level_[v] >= decision_level()) {
        ++path_count;
      } else {
        learnt.push_back(q);
      }
    }
    do {
      --index;
    } while (!seen_[var_of(trail_[index])]);
    p = trail_[index];
    reason = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path_count;
  } while (path_count > 0);
  learnt[0] = negate(p);

  // Recursive minimisation: drop literals implied by the rest of the clause.
  analyze_toclear_.assign(learnt.begin(), learnt.end());
  std::uint32_t levels = 0;
  for (std::size_t k = 1; k < learnt.size(); ++k) levels |= abstract_level(var_of(learnt[k]));
  std::size_t keep = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    const int v = var_of(learnt[k]);
    if (reason_[v] == kNoReason || !lit_redundant(learnt[k], levels)) learnt[keep++] = learnt[k];
  }
  learnt.resize(keep);
  for (const Lit l : analyze_toclear_) seen_[var_of(l)] = 0;

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k) {
      if (level_[var_of(learnt[k])] > level_[var_of(learnt[max_i])]) max_i = k;
    }
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level_[var_of(learnt[1])];
  }

  ++lbd_counter_;
  lbd = 0;
  for (const Lit l : learnt) {
    const int lev = level_[var_of(l)];
    if (lbd_stamp_.size() <= static_cast<std::size_t>(lev)) lbd_stamp_.resize(lev + 1, 0);
    if (lbd_stamp_[lev] != lbd_counter_) {
      lbd_stamp_[lev] = lbd_counter_;
      ++lbd;
    }
  }
}

bool CdclSolver::lit_redundant(Lit p, std::uint32_t abstract_levels) {
  analyze_stack_.clear();
  analyze_stack_.push_back(p);
  const std::size_t top = analyze_toclear_.size();
  while (!analyze_stack_.empty()) {
    const Lit cur = analyze_stack_.back();
    analyze_stack_.pop_back();
    const CRef r = reason_[var_of(cur)];
    const std::uint32_t size = clause_size(r);
    const Lit* lits = clause_lits(r);
    for (std::uint32_t k = 0; k < size; ++k) {
      const Lit q = lits[k];
      const int v = var_of(q);
      if (v == var_of(cur) || seen_[v] || level_[v] == 0) continue;
      if (reason_[v] != kNoReason && (abstract_level(v) & abstract_levels) != 0) {
        seen_[v] = 1;
        analyze_stack_.push_back(q);
        analyze_toclear_.push_back(q);
      } else {
        for (std::size_t j = top; j < analyze_toclear_.size(); ++j) {
          seen_[var_of(analyze_toclear_[j])] = 0;
        }
        analyze_toclear_.resize(top);
        return false;
      }
    }
  }
  return true;
}

void CdclSolver::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (std::size_t c = trail_.size(); c-- > trail_lim_[static_cast<std::size_t>(level)];) {
    const Lit l = trail_[c];
    const int v = var_of(l);
    assigns_[v] = 0;
    lit_value_[l] = 0;
    lit_value_[negate(l)] = 0;
    saved_phase_[v] = sign_of(l) ? 1 : 0;
    reason_[v] = kNoReason;
    if (heap_index_[v] < 0) heap_insert(v);
  }
  qhead_ = trail_lim_[static_cast<std::size_t>(level)];
  trail_.resize(qhead_);
  trail_lim_.resize(static_cast<std::size_t>(level));
}

CdclSolver::Lit CdclSolver::pick_branch() {
  if (options_.random_var_freq > 0.0 && !heap_.empty()) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng_) < options_.random_var_freq) {
      std::uniform_int_distribution<std::size_t> pick(0, heap_.size() - 1);
      const int v = heap_[pick(rng_)];
      if (assigns_[v] == 0) return make_lit(v, saved_phase_[v] != 0);
    }
  }
  while (!heap_.empty()) {
    const int v = heap_pop();
    if (assigns_[v] == 0) return make_lit(v, saved_phase_[v] != 0);
  }
  return kNoLit;
}

void CdclSolver::heap_insert(int v) {
  heap_index_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void CdclSolver::heap_up(std::size_t i) {
  const int v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_index_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<int>(i);
}

void CdclSolver::heap_down(std::size_t i) {
  const int v = heap_[i];
  const std::size_t n = heap_.size();
  while (true) {
    std::size_t child = 2 * i + 1;
    if (child >= n) break;
    if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_index_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<int>(i);
}

int CdclSolver::heap_pop() {
  const int top = heap_[0];
  heap_index_[top] = -1;
  const int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_index_[last] = 0;
    heap_down(0);
  }
  return top;
}

bool CdclSolver::assign_pure_literals() {
  // Repeats until no new pure literal appears; each round only counts
  // clauses not yet satisfied at the root.
  for (int round = 0; round < 8; ++round) {
    std::vector<std::uint8_t> occurs(lit_value_.size(), 0);
    for (const CRef c : originals_) {
      const std::uint32_t size = clause_size(c);
      const Lit* lits = clause_lits(c);
      bool satisfied = false;
      for (std::uint32_t k = 0; k < size && !satisfied; ++k) satisfied = value(lits[k]) > 0;
      if (satisfied) continue;
      for (std::uint32_t k = 0; k < size; ++k) {
        if (value(lits[k]) == 0) occurs[lits[k]] = 1;
      }
    }
    std::size_t assigned = 0;
    for (int v = 0; v < num_vars(); ++v) {
      if (assigns_[v] != 0) continue;
      const Lit pos = make_lit(v, false);
      const Lit neg = make_lit(v, true);
      if (occurs[pos] && !occurs[neg]) {
        enqueue(pos, kNoReason);
      } else if (occurs[neg] && !occurs[pos]) {
        enqueue(neg, kNoReason);
      } else {
        continue;
      }
      ++assigned;
    }
    stats_.pure_literals += assigned;
    if (propagate() != kNoReason) return false;
    if (assigned == 0) break;
  }
  return true;
}

void CdclSolver::reduce_and_collect() {
  // Called at decision level 0 with propagation complete.
  if (learnts_.size() > max_learnts_) {
    std::vector<CRef> sorted = learnts_;
    std::sort(sorted.begin(), sorted.end(), [&](CRef a, CRef b) {
      if (clause_lbd(a) != clause_lbd(b)) return clause_lbd(a) > clause_lbd(b);
      return clause_activity(a) < clause_activity(b);
    });
    const std::size_t remove = sorted.size() / 2;
    for (std::size_t k = 0; k < remove; ++k) {
      if (clause_lbd(sorted[k]) <= 2) continue;
      arena_[sorted[k]] |= 2U;
      wasted_words_ += clause_size(sorted[k]) + kHeaderWords;
    }
    max_learnts_ += max_learnts_ / 10;
  }

  // Rebuild the arena without deleted or root-satisfied clauses, dropping
  // root-false literals, then re-establish all watches from scratch.
  std::vector<std::uint32_t> fresh;
  fresh.reserve(arena_.size() - std::min<std::size_t>(wasted_words_, arena_.size()));
  std::vector<CRef> new_originals;
  std::vector<CRef> new_learnts;
  std::vector<Lit> lits;
  auto relocate = [&](CRef c, std::vector<CRef>& into) {
    if (clause_deleted(c)) return;
    lits.clear();
    const std::uint32_t size = clause_size(c);
    const Lit* old = clause_lits(c);
    for (std::uint32_t k = 0; k < size; ++k) {
      const std::int8_t v = value(old[k]);
      if (v > 0) return;
      if (v == 0) lits.push_back(old[k]);
    }
    // At the root after full propagation every unsatisfied clause keeps at
    // least two unassigned literals.
    const auto cref = static_cast<CRef>(fresh.size());
    fresh.push_back((static_cast<std::uint32_t>(lits.size()) << 2) | (arena_[c] & 1U));
    fresh.push_back(arena_[c + 1]);
    fresh.push_back(arena_[c + 2]);
    for (const Lit l : lits) fresh.push_back(l);
    into.push_back(cref);
  };
  for (const CRef c : originals_) relocate(c, new_originals);
  for (const CRef c : learnts_) relocate(c, new_learnts);
  arena_ = std::move(fresh);
  originals_ = std::move(new_originals);
  learnts_ = std::move(new_learnts);
  wasted_words_ = 0;
  for (auto& r : reason_) r = kNoReason;
  for (auto& w : watches_) w.clear();
  for (auto& w : bin_watches_) w.clear();
  for (const CRef c : originals_) attach(c);
  for (const CRef c : learnts_) attach(c);
}

bool CdclSolver::budget_exhausted(const Budget& budget,
                                  std::chrono::steady_clock::time_point deadline,
                                  bool has_deadline) const {
  if (budget.max_conflicts && stats_.conflicts >= *budget.max_conflicts) return true;
  return has_deadline && std::chrono::steady_clock::now() >= deadline;
}

SolveOutcome CdclSolver::solve(const Budget& budget) {
  const auto start = std::chrono::steady_clock::now();
  const bool has_deadline = budget.max_seconds.has_value();
  const auto deadline =
      has_deadline ? start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(*budget.max_seconds))
                   : start;
  const std::uint64_t conflicts_at_start = stats_.conflicts;
  Budget local = budget;
  if (local.max_conflicts) *local.max_conflicts += conflicts_at_start;

  auto finish = [&](SatStatus status) {
    SolveOutcome out;
    out.status = status;
    if (status == SatStatus::Sat) {
      out.model = Assignment(static_cast<std::uint32_t>(num_vars()));
      for (int v = 0; v < num_vars(); ++v) {
        // Variables left unassigned (none in practice) default to false.
        out.model.set(static_cast<std::uint32_t>(v + 1), assigns_[v] > 0);
      }
    }
    cancel_until(0);
    stats_.learnt_clauses = learnts_.size();
    stats_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.stats = stats_;
    return out;
  };

  if (!ok_) return finish(SatStatus::Unsat);
  cancel_until(0);
  if (propagate() != kNoReason) {
    ok_ = false;
    return finish(SatStatus::Unsat);
  }
  if (options_.pure_literals && !solved_once_) {
    if (!assign_pure_literals()) {
      ok_ = false;
      return finish(SatStatus::Unsat);
    }
  }
  solved_once_ = true;
  if (max_learnts_ == 0) max_learnts_ = std::max<std::size_t>(originals_.size() / 3, 5000);

  std::vector<Lit> learnt;
  std::uint64_t restart_index = 0;
  while (true) {
    const auto limit = static_cast<std::uint64_t>(luby(2.0, restart_index++) * options_.restart_unit);
    std::uint64_t conflicts_this_restart = 0;
    while (true) {
      const CRef conflict = propagate();
      if (conflict != kNoReason) {
        ++stats_.conflicts;
        ++conflicts_this_restart;
        if (decision_level() == 0) {
          ok_ = false;
          return finish(SatStatus::Unsat);
        }
        int backtrack_level = 0;
        std::uint32_t lbd = 0;
        analyze(conflict, learnt, backtrack_level, lbd);
        cancel_until(backtrack_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          const CRef c = alloc_clause(learnt, true);
          clause_lbd(c) = lbd;
          learnts_.push_back(c);
          attach(c);
          bump_clause(c);
          enqueue(learnt[0], c);
        }
        decay_activities();
        if ((stats_.conflicts & 255U) == 0 && budget_exhausted(local, deadline, has_deadline)) {
          return finish(SatStatus::Unknown);
        }
        if (local.max_conflicts && stats_.conflicts >= *local.max_conflicts) {
          return finish(SatStatus::Unknown);
        }
        continue;
      }
      if (conflicts_this_restart >= limit) break;
      if ((stats_.decisions & 4095U) == 0 && budget_exhausted(local, deadline, has_deadline)) {
        return finish(SatStatus::Unknown);
      }
      const Lit next = pick_branch();
      if (next == kNoLit) return finish(SatStatus::Sat);
      ++stats_.decisions;
      trail_lim_.push_back(trail_.size());
      enqueue(next, kNoReason);
    }
    ++stats_.restarts;
    cancel_until(0);
    if (budget_exhausted(local, deadline, has_deadline)) return finish(SatStatus::Unknown);
    if (propagate() != kNoReason) {
      ok_ = false;
      return finish(SatStatus::Unsat);
    }
    if (learnts_.size() > max_learnts_ || wasted_words_ > arena_.size() / 4) reduce_and_collect();
  }
}

SolveOutcome solve(const Cnf& cnf, const Budget& budget, const SolverOptions& options) {
  CdclSolver solver(options);
  solver.reserve_vars(cnf.num_vars);
  for (const auto& clause : cnf.clauses) {
    if (!solver.add_clause(clause)) break;
  }
  SolveOutcome out = solver.solve(budget);
  if (out.status == SatStatus::Sat && !satisfies(cnf, out.model)) {
    throw std::logic_error("internal solver error: model violates a clause");
  }
  return out;
}

Enumeration enumerate_models(const Cnf& cnf, std::span<const int> projection, std::size_t limit,
                             const Budget& budget, SolverOptions options) {
  options.pure_literals = false;
  Enumeration result;
  CdclSolver solver(options);
  solver.reserve_vars(cnf.num_vars);
  bool ok = true;
  for (const auto& clause : cnf.clauses) {
    if (!solver.add_clause(clause)) {
      ok = false;
      break;
    }
  }
  const auto start = std::chrono::steady_clock::now();
  std::vector<int> blocking;
  while (ok && result.models.size() < limit) {
    Budget remaining = budget;
    if (budget.max_seconds) {
      const double used = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      remaining.max_seconds = std::max(0.0, *budget.max_seconds - used);
    }
    SolveOutcome out = solver.solve(remaining);
    result.stats = out.stats;
    if (out.status == SatStatus::Unknown) {
      result.budget_exhausted = true;
      return result;
    }
    if (out.status == SatStatus::Unsat) {
      result.complete = true;
      return result;
    }
    if (!satisfies(cnf, out.model)) {
      throw std::logic_error("internal solver error: model violates a clause");
    }
    Assignment projected;
    blocking.clear();
    for (const int v : projection) {
      const bool value = out.model.get(static_cast<std::uint32_t>(v)).value_or(false);
      projected.set(static_cast<std::uint32_t>(v), value);
      blocking.push_back(value ? -v : v);
    }
    result.models.push_back(std::move(projected));
    if (blocking.empty() || !solver.add_clause(blocking)) ok = false;
  }
  if (!ok) result.complete = true;
  return result;
}

}  // namespace symcert
