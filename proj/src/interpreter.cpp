#include "symcert/interpreter.hpp"

#include <string>
#include <utility>

namespace symcert {

namespace {

bool is_natural_name(const std::string& name) { return !name.empty() && name[0] == 'n'; }

std::string kind_name(const Value& v) { return is_boolean(v) ? "boolean" : "natural"; }

[[noreturn]] void exec_error(SourceLoc loc, const std::string& message) {
  throw SpecError(Stage::Execute, loc, message);
}

}  // namespace

bool is_ground(const Value& v) {
  return std::holds_alternative<Natural>(v) || std::holds_alternative<bool>(v);
}

bool is_boolean(const Value& v) {
  return std::holds_alternative<bool>(v) || std::holds_alternative<Formula>(v);
}

GroundValue ground_check(const Value& v, SourceLoc loc, std::string_view what) {
  if (const auto* n = std::get_if<Natural>(&v)) return *n;
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  exec_error(loc, std::string(what) + " must be ground but is symbolic");
}

std::string format_ground(const GroundValue& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::to_string(std::get<Natural>(v).value);
}

std::string Unknown::display() const {
  std::string out = name;
  for (auto i : indices) out += "[" + std::to_string(i) + "]";
  return out;
}

std::size_t Interpreter::KeyHash::operator()(
    const std::pair<std::string, std::vector<std::uint64_t>>& k) const noexcept {
  std::size_t h = std::hash<std::string>{}(k.first);
  for (auto i : k.second) h = h * 1000003u ^ std::hash<std::uint64_t>{}(i);
  return h;
}

Interpreter::Interpreter(ExecOptions options) : options_(options), words_(result_.store) {
  if (options_.width == 0 || options_.width > kMaxWidth) {
    throw SpecError(Stage::Execute, "word width must be between 1 and " + std::to_string(kMaxWidth));
  }
}

ExecResult Interpreter::finish() && {
  result_.stats.formula_nodes = result_.store.node_count();
  return std::move(result_);
}

SymWord Interpreter::lift(const Value& v) {
  if (const auto* n = std::get_if<Natural>(&v)) return words_.constant(n->value, options_.width);
  return std::get<SymWord>(v);
}

Value Interpreter::normalise(SymWord w) {
  if (auto g = words_.ground_value(w)) return Natural{*g};
  return w;
}

Value Interpreter::normalise(Formula f) {
  if (auto c = result_.store.const_value(f)) return *c;
  return f;
}

Formula Interpreter::as_formula(const Value& v, SourceLoc loc, std::string_view what) {
  if (const auto* b = std::get_if<bool>(&v)) return result_.store.constant(*b);
  if (const auto* f = std::get_if<Formula>(&v)) return *f;
  exec_error(loc, std::string(what) + " requires a boolean operand, got a natural");
}

Value Interpreter::read(const std::string& name, const std::vector<std::uint64_t>& indices,
                        SourceLoc) {
  auto key = std::make_pair(name, indices);
  if (auto it = env_.find(key); it != env_.end()) return it->second;

  Unknown unknown{name, indices, !is_natural_name(name), {}};
  Value fresh;
  if (unknown.is_boolean) {
    const Formula f = result_.store.fresh_var();
    unknown.bits.push_back(result_.store.var_id(f));
    fresh = f;
  } else {
    SymWord w = words_.fresh(options_.width);
    for (const auto bit : w.bits) unknown.bits.push_back(result_.store.var_id(bit));
    fresh = std::move(w);
  }
  result_.registry.push_back(std::move(unknown));
  env_.emplace(std::move(key), fresh);
  return fresh;
}

void Interpreter::assign(const std::string& name, const std::vector<std::uint64_t>& indices,
                         Value value, SourceLoc loc) {
  if (is_natural_name(name) == is_boolean(value)) {
    exec_error(loc, "kind mismatch: cannot assign a " + kind_name(value) + " value to " +
                        (is_natural_name(name) ? "natural" : "boolean") + " variable '" + name + "'");
  }
  env_.insert_or_assign(std::make_pair(name, indices), std::move(value));
}

Value Interpreter::combine(AssignOp op, Value lhs, Value rhs, SourceLoc loc) {
  switch (op) {
    case AssignOp::Plain: return rhs;
    case AssignOp::Add: return binary(BinaryOp::Add, std::move(lhs), std::move(rhs), loc);
    case AssignOp::Sub: return binary(BinaryOp::Sub, std::move(lhs), std::move(rhs), loc);
    case AssignOp::Mul: return binary(BinaryOp::Mul, std::move(lhs), std::move(rhs), loc);
    case AssignOp::Shl: return binary(BinaryOp::Shl, std::move(lhs), std::move(rhs), loc);
    case AssignOp::Shr: return binary(BinaryOp::Shr, std::move(lhs), std::move(rhs), loc);
    case AssignOp::BitAnd: return binary(BinaryOp::BitAnd, std::move(lhs), std::move(rhs), loc);
    case AssignOp::BitOr: return binary(BinaryOp::BitOr, std::move(lhs), std::move(rhs), loc);
    case AssignOp::BitXor: return binary(BinaryOp::BitXor, std::move(lhs), std::move(rhs), loc);
    case AssignOp::And: return binary(BinaryOp::And, std::move(lhs), std::move(rhs), loc);
    case AssignOp::Or: return binary(BinaryOp::Or, std::move(lhs), std::move(rhs), loc);
    case AssignOp::Xor: return binary(BinaryOp::Xor, std::move(lhs), std::move(rhs), loc);
  }
  return rhs;
}

void Interpreter::compound_assign(AssignOp op, const std::string& name,
                                  const std::vector<std::uint64_t>& indices, Value rhs,
                                  SourceLoc loc) {
  Value lhs = read(name, indices, loc);
  assign(name, indices, combine(op, std::move(lhs), std::move(rhs), loc), loc);
}

std::vector<std::uint64_t> Interpreter::ground_indices(const Expr& var) {
  std::vector<std::uint64_t> out;
  out.reserve(var.indices.size());
  for (const auto& idx : var.indices) {
    const Value v = evaluate(idx);
    const auto* n = std::get_if<Natural>(&v);
    if (n == nullptr) {
      if (is_boolean(v)) exec_error(idx.loc, "array index must be a natural");
      exec_error(idx.loc, "array index must be ground but is symbolic");
    }
    out.push_back(n->value);
  }
  return out;
}

Value Interpreter::unary(UnaryOp op, Value v, SourceLoc loc) {
  const std::uint64_t mask = width_mask(options_.width);
  if (op == UnaryOp::Not || (op == UnaryOp::BitNot && is_boolean(v))) {
    if (const auto* b = std::get_if<bool>(&v)) return !*b;
    return normalise(result_.store.mk_not(as_formula(v, loc, "operator '!'")));
  }
  if (is_boolean(v)) {
    exec_error(loc, "operator '" + std::string(spelling(op)) + "' requires a natural operand");
  }
  if (const auto* n = std::get_if<Natural>(&v)) {
    return Natural{(op == UnaryOp::Neg ? (0 - n->value) : ~n->value) & mask};
  }
  const auto& w = std::get<SymWord>(v);
  return normalise(op == UnaryOp::Neg ? words_.neg(w) : words_.bit_not(w));
}

Value Interpreter::binary(BinaryOp op, Value lhs, Value rhs, SourceLoc loc) {
  auto& store = result_.store;
  const std::string op_text(spelling(op));
  const bool lb = is_boolean(lhs);
  const bool rb = is_boolean(rhs);

  switch (op) {
    case BinaryOp::And:
    case BinaryOp::Or:
    case BinaryOp::Xor: {
      if (!lb || !rb) exec_error(loc, "operator '" + op_text + "' requires boolean operands");
      break;
    }
    case BinaryOp::BitAnd:
    case BinaryOp::BitOr:
    case BinaryOp::BitXor:
    case BinaryOp::Eq:
    case BinaryOp::Ne:
      if (lb != rb) exec_error(loc, "operator '" + op_text + "' applied to a natural and a boolean");
      break;
    default:
      if (lb || rb) exec_error(loc, "operator '" + op_text + "' requires natural operands");
      break;
  }

  if (lb) {
    const Formula a = as_formula(lhs, loc, op_text);
    const Formula b = as_formula(rhs, loc, op_text);
    switch (op) {
      case BinaryOp::And:
      case BinaryOp::BitAnd: return normalise(store.mk_and(a, b));
      case BinaryOp::Or:
      case BinaryOp::BitOr: return normalise(store.mk_or(a, b));
      case BinaryOp::Xor:
      case BinaryOp::BitXor:
      case BinaryOp::Ne: return normalise(store.mk_xor(a, b));
      case BinaryOp::Eq: return normalise(store.mk_iff(a, b));
      default: break;
    }
    exec_error(loc, "operator '" + op_text + "' is not defined on booleans");
  }

  const std::uint64_t mask = width_mask(options_.width);
  if (op == BinaryOp::Shl || op == BinaryOp::Shr) {
    const auto* amount = std::get_if<Natural>(&rhs);
    if (amount == nullptr) exec_error(loc, "shift amount must be ground");
    const std::uint64_t k = amount->value;
    if (const auto* n = std::get_if<Natural>(&lhs)) {
      if (k >= options_.width) return Natural{0};
      return Natural{(op == BinaryOp::Shl ? n->value << k : n->value >> k) & mask};
    }
    const auto& w = std::get<SymWord>(lhs);
    return normalise(op == BinaryOp::Shl ? words_.shl(w, k) : words_.shr(w, k));
  }

  const auto* ln = std::get_if<Natural>(&lhs);
  const auto* rn = std::get_if<Natural>(&rhs);
  if (ln != nullptr && rn != nullptr) {
    const std::uint64_t a = ln->value;
    const std::uint64_t b = rn->value;
    switch (op) {
      case BinaryOp::Add: return Natural{(a + b) & mask};
      case BinaryOp::Sub: return Natural{(a - b) & mask};
      case BinaryOp::Mul: return Natural{(a * b) & mask};
      case BinaryOp::BitAnd: return Natural{a & b};
      case BinaryOp::BitOr: return Natural{a | b};
      case BinaryOp::BitXor: return Natural{a ^ b};
      case BinaryOp::Eq: return a == b;
      case BinaryOp::Ne: return a != b;
      case BinaryOp::Lt: return a < b;
      case BinaryOp::Le: return a <= b;
      case BinaryOp::Gt: return a > b;
      case BinaryOp::Ge: return a >= b;
      default: break;
    }
  }

  const SymWord a = lift(lhs);
  const SymWord b = lift(rhs);
  switch (op) {
    case BinaryOp::Add: return normalise(words_.add(a, b));
    case BinaryOp::Sub: return normalise(words_.sub(a, b));
    case BinaryOp::Mul: return normalise(words_.mul(a, b));
    case BinaryOp::BitAnd: return normalise(words_.bit_and(a, b));
    case BinaryOp::BitOr: return normalise(words_.bit_or(a, b));
    case BinaryOp::BitXor: return normalise(words_.bit_xor(a, b));
    case BinaryOp::Eq: return normalise(words_.cmp(CmpOp::Eq, a, b));
    case BinaryOp::Ne: return normalise(words_.cmp(CmpOp::Ne, a, b));
    case BinaryOp::Lt: return normalise(words_.cmp(CmpOp::Lt, a, b));
    case BinaryOp::Le: return normalise(words_.cmp(CmpOp::Le, a, b));
    case BinaryOp::Gt: return normalise(words_.cmp(CmpOp::Gt, a, b));
    case BinaryOp::Ge: return normalise(words_.cmp(CmpOp::Ge, a, b));
    default: break;
  }
  exec_error(loc, "unsupported operator '" + op_text + "'");
}

Value Interpreter::ite(const Value& c, Value then_v, Value else_v, SourceLoc loc) {
  if (!is_boolean(c)) exec_error(loc, "ite condition must be boolean");
  if (is_boolean(then_v) != is_boolean(else_v)) {
    exec_error(loc, "ite branches must both be natural or both be boolean");
  }
  if (const auto* g = std::get_if<bool>(&c)) return *g ? then_v : else_v;
  const Formula cond = std::get<Formula>(c);
  if (is_boolean(then_v)) {
    return normalise(result_.store.mk_ite(cond, as_formula(then_v, loc, "ite"),
                                          as_formula(else_v, loc, "ite")));
  }
  return normalise(words_.ite(cond, lift(then_v), lift(else_v)));
}

Value Interpreter::evaluate(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var: {
      auto indices = ground_indices(e);
      return read(e.name, indices, e.loc);
    }
    case Expr::Kind::Natural: return Natural{e.number & width_mask(options_.width)};
    case Expr::Kind::Boolean: return e.truth;
    case Expr::Kind::Unary: return unary(e.unary_op, evaluate(e.operands[0]), e.loc);
    case Expr::Kind::Binary: {
      Value lhs = evaluate(e.operands[0]);
      Value rhs = evaluate(e.operands[1]);
      return binary(e.binary_op, std::move(lhs), std::move(rhs), e.loc);
    }
    case Expr::Kind::Ite: {
      Value c = evaluate(e.operands[0]);
      Value t = evaluate(e.operands[1]);
      Value f = evaluate(e.operands[2]);
      return ite(c, std::move(t), std::move(f), e.loc);
    }
  }
  exec_error(e.loc, "unknown expression");
}

void Interpreter::run(const Program& program) {
  for (const auto& s : program.statements) run(s);
}

void Interpreter::run(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::Assign: {
      const auto indices = ground_indices(s.target);
      if (s.assign_op == AssignOp::Plain) {
        assign(s.target.name, indices, evaluate(s.value), s.loc);
      } else {
        // The target is read before the right-hand side so that unknowns are
        // registered in textual order.
        Value lhs = read(s.target.name, indices, s.target.loc);
        Value rhs = evaluate(s.value);
        assign(s.target.name, indices, combine(s.assign_op, std::move(lhs), std::move(rhs), s.loc),
               s.loc);
      }
      return;
    }
    case Stmt::Kind::Increment: {
      const auto indices = ground_indices(s.target);
      compound_assign(AssignOp::Add, s.target.name, indices, Natural{1}, s.loc);
      return;
    }
    case Stmt::Kind::For: {
      run(s.header[0]);
      std::uint64_t iterations = 0;
      while (true) {
        const Value cond = evaluate(s.value);
        if (!is_boolean(cond)) exec_error(s.value.loc, "loop condition must be boolean");
        const auto g = std::get_if<bool>(&cond);
        if (g == nullptr) {
          exec_error(s.value.loc, "loops must have known, ground bounds; condition '" +
                                      to_source(s.value) + "' is symbolic");
        }
        if (!*g) break;
        if (++iterations > options_.max_loop_iterations) {
          exec_error(s.loc, "loop exceeded " + std::to_string(options_.max_loop_iterations) +
                                " iterations (does the counter wrap around at this width?)");
        }
        run(s.body[0]);
        run(s.header[1]);
        ++result_.stats.loop_iterations;
      }
      return;
    }
    case Stmt::Kind::If: {
      const Value cond = evaluate(s.value);
      if (!is_boolean(cond)) exec_error(s.value.loc, "if condition must be boolean");
      const auto g = std::get_if<bool>(&cond);
      if (g == nullptr) {
        exec_error(s.value.loc, "if condition '" + to_source(s.value) +
                                    "' must be ground; use ite(...) for symbolic choices");
      }
      if (*g) {
        run(s.body[0]);
      } else if (s.has_else) {
        run(s.else_body[0]);
      }
      return;
    }
    case Stmt::Kind::Assert: {
      const Value v = evaluate(s.value);
      const Formula f = as_formula(v, s.value.loc, "assert");
      result_.assertion = result_.store.mk_and(result_.assertion, f);
      return;
    }
    case Stmt::Kind::Print: {
      const Value v = evaluate(s.value);
      if (!is_ground(v)) {
        exec_error(s.value.loc, "cannot print symbolic value '" + to_source(s.value) +
                                    "'; unknowns are reported from the model after solving");
      }
      result_.prints.push_back({to_source(s.value), ground_check(v, s.value.loc)});
      return;
    }
    case Stmt::Kind::Block:
      for (const auto& child : s.body) run(child);
      return;
  }
}

ExecResult execute(const Program& program, const ExecOptions& options) {
  Interpreter interpreter(options);
  interpreter.run(program);
  return std::move(interpreter).finish();
}

}  // namespace symcert
