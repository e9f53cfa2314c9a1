#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symcert/assignment.hpp"
#include "symcert/formula.hpp"

namespace symcert {

/// Source-level unknown and the CNF variables holding its bits (LSB first).
struct NamedVars {
  std::string name;
  std::vector<int> vars;
  bool is_boolean = false;

  friend bool operator==(const NamedVars&, const NamedVars&) = default;
};

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<NamedVars> name_map;

  std::size_t literal_count() const;
  friend bool operator==(const Cnf&, const Cnf&) = default;
};

struct TseitinOptions {
  /// Emit only the implication direction each node is used in
  /// (Plaisted-Greenbaum). Models stay models of the formula, but a node's
  /// definition variable may disagree with its value in unused directions.
  bool polarity = false;
};

/// Equisatisfiable CNF for `root`. Formula variable k becomes CNF variable k
/// for every variable of the store, so that name maps built from formula
/// variable ids carry over unchanged; definition variables follow. A constant
/// true root gives no clauses, a constant false root a single empty clause.
Cnf tseitin(const FormulaStore& store, Formula root, const TseitinOptions& options = {});

/// True iff every clause has a literal made true by the assignment.
bool satisfies(const Cnf& cnf, const Assignment& assignment);

/// DIMACS text: optional `c name <unknown> <var>...` lines, the `p cnf` header,
/// then one zero-terminated clause per line.
std::string write_dimacs(const Cnf& cnf, bool include_name_comments = false);

/// Parses DIMACS CNF (including `c name` lines written by write_dimacs).
/// Throws SpecError(Stage::Io) on malformed input.
Cnf parse_dimacs(std::string_view text);

enum class SatStatus { Sat, Unsat, Unknown };

std::string_view status_name(SatStatus status);

struct ParsedModel {
  SatStatus status = SatStatus::Unknown;
  Assignment assignment;
};

/// Parses SAT-competition solver output (`s ...` status line, `v ...` value
/// lines, `c ...` comments). Throws SpecError(Stage::Solve) on malformed
/// output or contradictory literals.
ParsedModel parse_dimacs_model(std::string_view solver_output);

/// SAT-competition output for a status and (when SAT) a model over 1..num_vars.
std::string write_dimacs_model(SatStatus status, const Assignment& model, int num_vars);

}  // namespace symcert
