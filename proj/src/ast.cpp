#include "symcert/ast.hpp"

#include <algorithm>

namespace symcert {

std::string_view spelling(UnaryOp op) {
  switch (op) {
    case UnaryOp::Not: return "!";
    case UnaryOp::Neg: return "-";
    case UnaryOp::BitNot: return "~";
  }
  return "?";
}

std::string_view spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Shl: return "<<";
    case BinaryOp::Shr: return ">>";
    case BinaryOp::BitAnd: return "&";
    case BinaryOp::BitOr: return "|";
    case BinaryOp::BitXor: return "^";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    case BinaryOp::Xor: return "^^";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
  }
  return "?";
}

std::string_view spelling(AssignOp op) {
  switch (op) {
    case AssignOp::Plain: return "=";
    case AssignOp::Add: return "+=";
    case AssignOp::Sub: return "-=";
    case AssignOp::Mul: return "*=";
    case AssignOp::Shl: return "<<=";
    case AssignOp::Shr: return ">>=";
    case AssignOp::BitAnd: return "&=";
    case AssignOp::BitOr: return "|=";
    case AssignOp::BitXor: return "^=";
    case AssignOp::And: return "&&=";
    case AssignOp::Or: return "||=";
    case AssignOp::Xor: return "^^=";
  }
  return "?";
}

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::Xor: return 2;
    case BinaryOp::And: return 3;
    case BinaryOp::BitOr: return 4;
    case BinaryOp::BitXor: return 5;
    case BinaryOp::BitAnd: return 6;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 7;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return 8;
    case BinaryOp::Shl:
    case BinaryOp::Shr: return 9;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 10;
    case BinaryOp::Mul: return 11;
  }
  return 0;
}

namespace {

template <typename T>
bool same_list(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(),
                    [](const T& x, const T& y) { return same_structure(x, y); });
}

}  // namespace

bool same_structure(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Var: return a.name == b.name && same_list(a.indices, b.indices);
    case Expr::Kind::Natural: return a.number == b.number;
    case Expr::Kind::Boolean: return a.truth == b.truth;
    case Expr::Kind::Unary: return a.unary_op == b.unary_op && same_list(a.operands, b.operands);
    case Expr::Kind::Binary: return a.binary_op == b.binary_op && same_list(a.operands, b.operands);
    case Expr::Kind::Ite: return same_list(a.operands, b.operands);
  }
  return false;
}

bool same_structure(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Stmt::Kind::Assign:
      return a.assign_op == b.assign_op && same_structure(a.target, b.target) &&
             same_structure(a.value, b.value);
    case Stmt::Kind::Increment: return same_structure(a.target, b.target);
    case Stmt::Kind::For:
      return same_structure(a.value, b.value) && same_list(a.header, b.header) &&
             same_list(a.body, b.body);
    case Stmt::Kind::If:
      return a.has_else == b.has_else && same_structure(a.value, b.value) &&
             same_list(a.body, b.body) && same_list(a.else_body, b.else_body);
    case Stmt::Kind::Assert:
    case Stmt::Kind::Print: return same_structure(a.value, b.value);
    case Stmt::Kind::Block: return same_list(a.body, b.body);
  }
  return false;
}

bool same_structure(const Program& a, const Program& b) {
  return same_list(a.statements, b.statements);
}

std::string to_source(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var: {
      std::string out = e.name;
      for (const auto& idx : e.indices) out += "[" + to_source(idx) + "]";
      return out;
    }
    case Expr::Kind::Natural: return std::to_string(e.number);
    case Expr::Kind::Boolean: return e.truth ? "true" : "false";
    case Expr::Kind::Unary: {
      const Expr& operand = e.operands[0];
      const bool wrap = operand.kind == Expr::Kind::Binary ||
                        (e.unary_op == UnaryOp::Neg && operand.kind == Expr::Kind::Unary);
      const std::string inner = to_source(operand);
      return std::string(spelling(e.unary_op)) + (wrap ? "(" + inner + ")" : inner);
    }
    case Expr::Kind::Binary: {
      const int p = precedence(e.binary_op);
      auto side = [&](const Expr& child, bool right) {
        std::string s = to_source(child);
        if (child.kind != Expr::Kind::Binary) return s;
        const int cp = precedence(child.binary_op);
        return (cp < p || (right && cp == p)) ? "(" + s + ")" : s;
      };
      return side(e.operands[0], false) + " " + std::string(spelling(e.binary_op)) + " " +
             side(e.operands[1], true);
    }
    case Expr::Kind::Ite:
      return "ite(" + to_source(e.operands[0]) + ", " + to_source(e.operands[1]) + ", " +
             to_source(e.operands[2]) + ")";
  }
  return {};
}

namespace {

std::string simple_statement(const Stmt& s) {
  if (s.kind == Stmt::Kind::Increment) return to_source(s.target) + "++";
  return to_source(s.target) + " " + std::string(spelling(s.assign_op)) + " " + to_source(s.value);
}

void render(const Stmt& s, int depth, std::string& out) {
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  switch (s.kind) {
    case Stmt::Kind::Assign:
    case Stmt::Kind::Increment: out += indent + simple_statement(s) + ";\n"; break;
    case Stmt::Kind::Assert: out += indent + "assert(" + to_source(s.value) + ");\n"; break;
    case Stmt::Kind::Print: out += indent + "print " + to_source(s.value) + ";\n"; break;
    case Stmt::Kind::Block:
      out += indent + "{\n";
      for (const auto& child : s.body) render(child, depth + 1, out);
      out += indent + "}\n";
      break;
    case Stmt::Kind::For:
      out += indent + "for(" + simple_statement(s.header[0]) + "; " + to_source(s.value) + "; " +
             simple_statement(s.header[1]) + ")\n";
      render(s.body[0], depth + 1, out);
      break;
    case Stmt::Kind::If:
      out += indent + "if(" + to_source(s.value) + ")\n";
      render(s.body[0], depth + 1, out);
      if (s.has_else) {
        out += indent + "else\n";
        render(s.else_body[0], depth + 1, out);
      }
      break;
  }
}

}  // namespace

std::string to_source(const Program& program) {
  std::string out;
  for (const auto& s : program.statements) render(s, 0, out);
  return out;
}

}  // namespace symcert
