#include "symcert/formula.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace symcert {

std::size_t FormulaStore::NodeHash::operator()(const Node& n) const noexcept {
  std::uint64_t h = static_cast<std::uint64_t>(n.kind) * 0x9e3779b97f4a7c15ULL;
  h ^= n.a + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= n.b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= n.c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

FormulaStore::FormulaStore() {
  nodes_.push_back(Node{NodeKind::False});
  nodes_.push_back(Node{NodeKind::True});
}

Formula FormulaStore::intern(NodeKind kind, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  Node node{kind, a, b, c};
  auto [it, inserted] = table_.try_emplace(node, static_cast<std::uint32_t>(nodes_.size()));
  if (inserted) nodes_.push_back(node);
  return Formula{it->second};
}

Formula FormulaStore::fresh_var() {
  const auto id = static_cast<std::uint32_t>(var_nodes_.size() + 1);
  const Formula f = intern(NodeKind::Var, id);
  var_nodes_.push_back(f.id);
  return f;
}

Formula FormulaStore::var(std::uint32_t var_id) const {
  if (var_id == 0 || var_id > var_nodes_.size()) {
    throw std::out_of_range("no such variable: " + std::to_string(var_id));
  }
  return Formula{var_nodes_[var_id - 1]};
}

int FormulaStore::arity(Formula f) const {
  switch (kind(f)) {
    case NodeKind::False:
    case NodeKind::True:
    case NodeKind::Var: return 0;
    case NodeKind::Not: return 1;
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Xor: return 2;
    case NodeKind::Ite: return 3;
  }
  return 0;
}

Formula FormulaStore::operand(Formula f, int i) const {
  const Node& n = nodes_[f.id];
  switch (i) {
    case 0: return Formula{n.a};
    case 1: return Formula{n.b};
    default: return Formula{n.c};
  }
}

bool FormulaStore::is_negation_of(Formula a, Formula b) const {
  if (kind(a) == NodeKind::Not && operand(a, 0) == b) return true;
  if (kind(b) == NodeKind::Not && operand(b, 0) == a) return true;
  return false;
}

Formula FormulaStore::mk_not(Formula f) {
  if (is_const(f)) return constant(f == kFalse);
  if (kind(f) == NodeKind::Not) return operand(f, 0);
  return intern(NodeKind::Not, f.id);
}

Formula FormulaStore::mk_and(Formula a, Formula b) {
  if (a == kFalse || b == kFalse) return kFalse;
  if (a == kTrue) return b;
  if (b == kTrue) return a;
  if (a == b) return a;
  if (is_negation_of(a, b)) return kFalse;
  if (b < a) std::swap(a, b);
  return intern(NodeKind::And, a.id, b.id);
}

Formula FormulaStore::mk_or(Formula a, Formula b) {
  if (a == kTrue || b == kTrue) return kTrue;
  if (a == kFalse) return b;
  if (b == kFalse) return a;
  if (a == b) return a;
  if (is_negation_of(a, b)) return kTrue;
  if (b < a) std::swap(a, b);
  return intern(NodeKind::Or, a.id, b.id);
}

Formula FormulaStore::mk_xor(Formula a, Formula b) {
  if (a == kFalse) return b;
  if (b == kFalse) return a;
  if (a == kTrue) return mk_not(b);
  if (b == kTrue) return mk_not(a);
  if (a == b) return kFalse;
  if (is_negation_of(a, b)) return kTrue;
  // Negations are pulled above the xor so that x^!y and !(x^y) share a node.
  bool negate = false;
  if (kind(a) == NodeKind::Not) {
    a = operand(a, 0);
    negate = !negate;
  }
  if (kind(b) == NodeKind::Not) {
    b = operand(b, 0);
    negate = !negate;
  }
  if (b < a) std::swap(a, b);
  const Formula x = intern(NodeKind::Xor, a.id, b.id);
  return negate ? mk_not(x) : x;
}

Formula FormulaStore::mk_ite(Formula c, Formula t, Formula e) {
  if (c == kTrue) return t;
  if (c == kFalse) return e;
  if (kind(c) == NodeKind::Not) {
    c = operand(c, 0);
    std::swap(t, e);
  }
  if (t == e) return t;
  if (t == kTrue && e == kFalse) return c;
  if (t == kFalse && e == kTrue) return mk_not(c);
  if (t == kTrue || t == c) return mk_or(c, e);
  if (t == kFalse) return mk_and(mk_not(c), e);
  if (e == kFalse || e == c) return mk_and(c, t);
  if (e == kTrue) return mk_or(mk_not(c), t);
  if (is_negation_of(t, e)) return mk_iff(c, t);
  return intern(NodeKind::Ite, c.id, t.id, e.id);
}

Evaluator::Evaluator(const FormulaStore& store, const Assignment& assignment)
    : store_(store), assignment_(assignment), memo_(store.node_count(), -1) {
  memo_[0] = 0;
  memo_[1] = 1;
}

bool Evaluator::operator()(Formula root) {
  if (memo_.size() < store_.node_count()) memo_.resize(store_.node_count(), -1);
  if (memo_[root.id] >= 0) return memo_[root.id] == 1;

  // Explicit post-order walk; arithmetic chains are far deeper than the stack.
  std::vector<std::pair<Formula, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [f, expanded] = stack.back();
    if (memo_[f.id] >= 0) {
      stack.pop_back();
      continue;
    }
    const int n = store_.arity(f);
    if (!expanded) {
      stack.back().second = true;
      for (int i = 0; i < n; ++i) {
        const Formula child = store_.operand(f, i);
        if (memo_[child.id] < 0) stack.emplace_back(child, false);
      }
      continue;
    }
    stack.pop_back();
    auto value = [&](int i) { return memo_[store_.operand(f, i).id] == 1; };
    bool result = false;
    switch (store_.kind(f)) {
      case NodeKind::False: result = false; break;
      case NodeKind::True: result = true; break;
      case NodeKind::Var: {
        const auto v = assignment_.get(store_.var_id(f));
        if (!v) throw std::out_of_range("unassigned variable " + std::to_string(store_.var_id(f)));
        result = *v;
        break;
      }
      case NodeKind::Not: result = !value(0); break;
      case NodeKind::And: result = value(0) && value(1); break;
      case NodeKind::Or: result = value(0) || value(1); break;
      case NodeKind::Xor: result = value(0) != value(1); break;
      case NodeKind::Ite: result = value(0) ? value(1) : value(2); break;
    }
    memo_[f.id] = result ? 1 : 0;
  }
  return memo_[root.id] == 1;
}

bool eval(const FormulaStore& store, Formula f, const Assignment& assignment) {
  Evaluator evaluator(store, assignment);
  return evaluator(f);
}

std::vector<std::uint32_t> support(const FormulaStore& store, std::span<const Formula> roots) {
  std::vector<char> seen(store.node_count(), 0);
  std::vector<Formula> stack(roots.begin(), roots.end());
  std::vector<std::uint32_t> vars;
  while (!stack.empty()) {
    const Formula f = stack.back();
    stack.pop_back();
    if (seen[f.id]) continue;
    seen[f.id] = 1;
    if (store.kind(f) == NodeKind::Var) vars.push_back(store.var_id(f));
    for (int i = 0; i < store.arity(f); ++i) stack.push_back(store.operand(f, i));
  }
  std::sort(vars.begin(), vars.end());
  return vars;
}

}  // namespace symcert
