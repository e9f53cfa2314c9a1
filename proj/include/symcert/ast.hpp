#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symcert/error.hpp"

namespace symcert {

enum class UnaryOp { Not, Neg, BitNot };

enum class BinaryOp {
  Add, Sub, Mul, Shl, Shr,
  BitAnd, BitOr, BitXor,
  And, Or, Xor,
  Eq, Ne, Lt, Le, Gt, Ge,
};

/// Operator of an assignment statement; Plain is `=`.
enum class AssignOp { Plain, Add, Sub, Mul, Shl, Shr, BitAnd, BitOr, BitXor, And, Or, Xor };

std::string_view spelling(UnaryOp op);
std::string_view spelling(BinaryOp op);
std::string_view spelling(AssignOp op);
/// Binding strength, higher binds tighter (C ordering, `^^` between `||` and `&&`).
int precedence(BinaryOp op);

struct Expr {
  enum class Kind { Var, Natural, Boolean, Unary, Binary, Ite };

  Kind kind = Kind::Var;
  SourceLoc loc;
  std::string name;            // Var
  std::vector<Expr> indices;   // Var: array subscripts, outermost first
  std::uint64_t number = 0;    // Natural
  bool truth = false;          // Boolean
  UnaryOp unary_op = UnaryOp::Not;
  BinaryOp binary_op = BinaryOp::Add;
  std::vector<Expr> operands;  // Unary: 1, Binary: 2, Ite: 3
};

struct Stmt {
  enum class Kind { Assign, Increment, For, If, Assert, Print, Block };

  Kind kind = Kind::Block;
  SourceLoc loc;
  Expr target;                   // Assign, Increment: a Var expression
  AssignOp assign_op = AssignOp::Plain;
  Expr value;                    // Assign: rhs; For/If: condition; Assert/Print: argument
  std::vector<Stmt> body;        // Block, For body, If then-branch
  std::vector<Stmt> else_body;   // If
  std::vector<Stmt> header;      // For: {init, step}
  bool has_else = false;
};

struct Program {
  std::vector<Stmt> statements;
};

/// Structural equality ignoring source locations.
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const Stmt& a, const Stmt& b);
bool same_structure(const Program& a, const Program& b);

/// Renders an expression with the minimal parentheses needed to reparse to
/// the same tree.
std::string to_source(const Expr& e);
std::string to_source(const Program& program);

}  // namespace symcert
