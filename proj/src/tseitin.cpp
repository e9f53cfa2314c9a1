#include "symcert/cnf.hpp"

#include <cstdlib>

namespace symcert {

namespace {

constexpr std::uint8_t kPos = 1;
constexpr std::uint8_t kNeg = 2;

}  // namespace

std::size_t Cnf::literal_count() const {
  std::size_t n = 0;
  for (const auto& c : clauses) n += c.size();
  return n;
}

Cnf tseitin(const FormulaStore& store, Formula root, const TseitinOptions& options) {
  Cnf cnf;
  cnf.num_vars = static_cast<int>(store.var_count());
  if (root == FormulaStore::kTrue) return cnf;
  if (root == FormulaStore::kFalse) {
    cnf.clauses.emplace_back();
    return cnf;
  }

  // Polarity in which each reachable node is needed. Ids are topological, so
  // a single descending sweep propagates polarities from parents to children.
  const std::size_t n = root.id + 1;
  std::vector<std::uint8_t> polarity(n, 0);
  polarity[root.id] = kPos;
  for (std::size_t id = n; id-- > 0;) {
    const std::uint8_t p = polarity[id];
    if (p == 0) continue;
    const Formula f{static_cast<std::uint32_t>(id)};
    const std::uint8_t both = kPos | kNeg;
    const std::uint8_t flipped =
        static_cast<std::uint8_t>(((p & kPos) ? kNeg : 0) | ((p & kNeg) ? kPos : 0));
    switch (store.kind(f)) {
      case NodeKind::Not: polarity[store.operand(f, 0).id] |= flipped; break;
      case NodeKind::And:
      case NodeKind::Or:
        polarity[store.operand(f, 0).id] |= p;
        polarity[store.operand(f, 1).id] |= p;
        break;
      case NodeKind::Xor:
        polarity[store.operand(f, 0).id] |= both;
        polarity[store.operand(f, 1).id] |= both;
        break;
      case NodeKind::Ite:
        polarity[store.operand(f, 0).id] |= both;
        polarity[store.operand(f, 1).id] |= p;
        polarity[store.operand(f, 2).id] |= p;
        break;
      default: break;
    }
  }

  // Literal for each node; Not nodes reuse their operand's variable.
  std::vector<int> lit(n, 0);
  for (std::size_t id = 0; id < n; ++id) {
    if (polarity[id] == 0) continue;
    const Formula f{static_cast<std::uint32_t>(id)};
    switch (store.kind(f)) {
      case NodeKind::False:
      case NodeKind::True: break;  // folded away by the store; never reachable under a gate
      case NodeKind::Var: lit[id] = static_cast<int>(store.var_id(f)); break;
      case NodeKind::Not: lit[id] = -lit[store.operand(f, 0).id]; break;
      default: lit[id] = ++cnf.num_vars; break;
    }
  }

  auto& out = cnf.clauses;
  for (std::size_t id = 0; id < n; ++id) {
    const std::uint8_t p = options.polarity ? polarity[id] : static_cast<std::uint8_t>(kPos | kNeg);
    if (polarity[id] == 0) continue;
    const Formula f{static_cast<std::uint32_t>(id)};
    const int x = lit[id];
    const bool pos = p & kPos;  // need x -> definition
    const bool neg = p & kNeg;  // need definition -> x
    switch (store.kind(f)) {
      case NodeKind::And: {
        const int a = lit[store.operand(f, 0).id];
        const int b = lit[store.operand(f, 1).id];
        if (pos) {
          out.push_back({-x, a});
          out.push_back({-x, b});
        }
        if (neg) out.push_back({x, -a, -b});
        break;
      }
      case NodeKind::Or: {
        const int a = lit[store.operand(f, 0).id];
        const int b = lit[store.operand(f, 1).id];
        if (pos) out.push_back({-x, a, b});
        if (neg) {
          out.push_back({x, -a});
          out.push_back({x, -b});
        }
        break;
      }
      case NodeKind::Xor: {
        const int a = lit[store.operand(f, 0).id];
        const int b = lit[store.operand(f, 1).id];
        if (pos) {
          out.push_back({-x, a, b});
          out.push_back({-x, -a, -b});
        }
        if (neg) {
          out.push_back({x, -a, b});
          out.push_back({x, a, -b});
        }
        break;
      }
      case NodeKind::Ite: {
        const int c = lit[store.operand(f, 0).id];
        const int t = lit[store.operand(f, 1).id];
        const int e = lit[store.operand(f, 2).id];
        if (pos) {
          out.push_back({-x, -c, t});
          out.push_back({-x, c, e});
          out.push_back({-x, t, e});  // redundant, strengthens propagation
        }
        if (neg) {
          out.push_back({x, -c, -t});
          out.push_back({x, c, -e});
          out.push_back({x, -t, -e});  // redundant
        }
        break;
      }
      default: break;
    }
  }
  out.push_back({lit[root.id]});
  return cnf;
}

bool satisfies(const Cnf& cnf, const Assignment& assignment) {
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (const int l : clause) {
      const auto v = assignment.get(static_cast<std::uint32_t>(std::abs(l)));
      if (v && *v == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace symcert
