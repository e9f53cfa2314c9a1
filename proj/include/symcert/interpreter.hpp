#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "symcert/ast.hpp"
#include "symcert/formula.hpp"
#include "symcert/word.hpp"

namespace symcert {

/// Ground natural, already reduced modulo 2^width.
struct Natural {
  std::uint64_t value = 0;
  friend bool operator==(Natural, Natural) = default;
};

/// The interpreter's universal value. Symbolic values whose formulas fold to
/// constants are always normalised to the ground alternatives.
using Value = std::variant<Natural, bool, SymWord, Formula>;
using GroundValue = std::variant<Natural, bool>;

bool is_ground(const Value& v);
bool is_boolean(const Value& v);

/// Returns the ground content of v, or throws SpecError(Stage::Execute) at loc
/// with `what` describing the place that needed a ground value.
GroundValue ground_check(const Value& v, SourceLoc loc = {}, std::string_view what = "value");

/// A variable (or array cell) read before any assignment; its value is fresh
/// propositional variables to be solved for.
struct Unknown {
  std::string name;
  std::vector<std::uint64_t> indices;
  bool is_boolean = false;
  std::vector<std::uint32_t> bits;  // formula variable ids, least significant first

  /// `name[i][j]` form used in model reports.
  std::string display() const;
};

struct PrintRecord {
  std::string text;
  GroundValue value;
};

struct ExecStats {
  std::uint64_t loop_iterations = 0;
  std::size_t formula_nodes = 0;
};

struct ExecOptions {
  unsigned width = 8;
  /// Guard against loops that never reach their bound (e.g. a counter that
  /// wraps around before the bound).
  std::uint64_t max_loop_iterations = std::uint64_t{1} << 26;
};

struct ExecResult {
  FormulaStore store;
  Formula assertion = FormulaStore::kTrue;
  std::vector<PrintRecord> prints;
  std::vector<Unknown> registry;
  ExecStats stats;
};

/// Symbolic executor over one environment and one formula arena.
class Interpreter {
 public:
  explicit Interpreter(ExecOptions options = {});
  Interpreter(const Interpreter&) = delete;
  Interpreter& operator=(const Interpreter&) = delete;

  void run(const Program& program);
  void run(const Stmt& stmt);
  Value evaluate(const Expr& expr);

  /// Reads a scalar (empty indices) or array cell, introducing a fresh unknown
  /// if it has never been assigned.
  Value read(const std::string& name, const std::vector<std::uint64_t>& indices, SourceLoc loc = {});
  void assign(const std::string& name, const std::vector<std::uint64_t>& indices, Value value,
              SourceLoc loc = {});
  /// lhs := lhs op rhs (lhs is read first, so an undefined lhs becomes an unknown).
  void compound_assign(AssignOp op, const std::string& name,
                       const std::vector<std::uint64_t>& indices, Value rhs, SourceLoc loc = {});

  FormulaStore& store() { return result_.store; }
  const ExecResult& state() const { return result_; }
  ExecResult finish() &&;

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<std::string, std::vector<std::uint64_t>>& k) const noexcept;
  };

  Value binary(BinaryOp op, Value lhs, Value rhs, SourceLoc loc);
  Value unary(UnaryOp op, Value v, SourceLoc loc);
  Value combine(AssignOp op, Value lhs, Value rhs, SourceLoc loc);
  Value ite(const Value& c, Value then_v, Value else_v, SourceLoc loc);
  std::vector<std::uint64_t> ground_indices(const Expr& var);
  SymWord lift(const Value& v);
  Value normalise(SymWord w);
  Value normalise(Formula f);
  Formula as_formula(const Value& v, SourceLoc loc, std::string_view what);

  ExecOptions options_;
  ExecResult result_;
  WordBuilder words_;
  std::unordered_map<std::pair<std::string, std::vector<std::uint64_t>>, Value, KeyHash> env_;
};

/// Symbolically executes a program: loops are unrolled, `if` conditions,
/// loop conditions, array indices, shift amounts and printed values must be
/// ground. Reading an undefined variable introduces a fresh unknown of the
/// configured width (one variable for booleans), recorded in first-read order.
/// All `assert` arguments are conjoined into the result's assertion.
ExecResult execute(const Program& program, const ExecOptions& options = {});

std::string format_ground(const GroundValue& v);

}  // namespace symcert
