#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "symcert/assignment.hpp"

namespace symcert {

enum class NodeKind : std::uint8_t { False, True, Var, Not, And, Or, Xor, Ite };

/// Handle to a node of a FormulaStore. Ids are topologically ordered:
/// every child has a smaller id than its parent.
struct Formula {
  std::uint32_t id = 0;

  friend bool operator==(Formula, Formula) = default;
  friend auto operator<=>(Formula, Formula) = default;
};

/// Hash-consed propositional DAG. Structurally equal formulas share a node, so
/// Formula equality is structural equality. Constructors apply constant
/// folding and a handful of local simplifications (idempotence,
/// complementation, negation pushing through xor and ite conditions).
///
/// A store is single-owner: building requires external serialization, reading
/// is safe from any number of threads.
class FormulaStore {
 public:
  FormulaStore();

  static constexpr Formula kFalse{0};
  static constexpr Formula kTrue{1};

  Formula constant(bool value) const { return value ? kTrue : kFalse; }

  /// Allocates a new propositional variable; ids are dense and start at 1.
  Formula fresh_var();
  Formula var(std::uint32_t var_id) const;

  Formula mk_not(Formula f);
  Formula mk_and(Formula a, Formula b);
  Formula mk_or(Formula a, Formula b);
  Formula mk_xor(Formula a, Formula b);
  Formula mk_iff(Formula a, Formula b) { return mk_not(mk_xor(a, b)); }
  Formula mk_ite(Formula c, Formula then_f, Formula else_f);

  NodeKind kind(Formula f) const { return nodes_[f.id].kind; }
  bool is_const(Formula f) const { return f.id < 2; }
  std::optional<bool> const_value(Formula f) const {
    if (!is_const(f)) return std::nullopt;
    return f == kTrue;
  }
  /// Variable id of a Var node.
  std::uint32_t var_id(Formula f) const { return nodes_[f.id].a; }
  /// i-th operand: 0..0 for Not, 0..1 for And/Or/Xor, 0..2 for Ite (cond, then, else).
  Formula operand(Formula f, int i) const;
  int arity(Formula f) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::uint32_t var_count() const { return static_cast<std::uint32_t>(var_nodes_.size()); }

 private:
  struct Node {
    NodeKind kind;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t c = 0;
    friend bool operator==(const Node&, const Node&) = default;
  };
  struct NodeHash {
    std::size_t operator()(const Node& n) const noexcept;
  };

  Formula intern(NodeKind kind, std::uint32_t a, std::uint32_t b = 0, std::uint32_t c = 0);
  bool is_negation_of(Formula a, Formula b) const;

  std::vector<Node> nodes_;
  std::unordered_map<Node, std::uint32_t, NodeHash> table_;
  std::vector<std::uint32_t> var_nodes_;  // var id - 1 -> node id
};

/// Evaluates formulas of one store under a fixed assignment, memoising node
/// values so that many roots (e.g. all bits of several words) share work.
class Evaluator {
 public:
  Evaluator(const FormulaStore& store, const Assignment& assignment);

  /// Throws std::out_of_range naming the variable if an unassigned variable
  /// is reachable from f.
  bool operator()(Formula f);

 private:
  const FormulaStore& store_;
  const Assignment& assignment_;
  std::vector<std::int8_t> memo_;
};

bool eval(const FormulaStore& store, Formula f, const Assignment& assignment);

/// Ids of all variables reachable from the given roots, ascending.
std::vector<std::uint32_t> support(const FormulaStore& store, std::span<const Formula> roots);

}  // namespace symcert
