#include "symcert/parser.hpp"

#include <charconv>
#include <initializer_list>
#include <optional>
#include <string>

namespace symcert {

namespace {

struct AssignSpelling {
  std::string_view text;
  AssignOp op;
};

constexpr AssignSpelling kAssignOps[] = {
    {"=", AssignOp::Plain},   {"+=", AssignOp::Add},     {"-=", AssignOp::Sub},
    {"*=", AssignOp::Mul},    {"<<=", AssignOp::Shl},    {">>=", AssignOp::Shr},
    {"&=", AssignOp::BitAnd}, {"|=", AssignOp::BitOr},   {"^=", AssignOp::BitXor},
    {"&&=", AssignOp::And},   {"||=", AssignOp::Or},     {"^^=", AssignOp::Xor},
};

struct BinarySpelling {
  std::string_view text;
  BinaryOp op;
};

constexpr BinarySpelling kBinaryOps[] = {
    {"||", BinaryOp::Or},  {"^^", BinaryOp::Xor},    {"&&", BinaryOp::And},
    {"|", BinaryOp::BitOr}, {"^", BinaryOp::BitXor}, {"&", BinaryOp::BitAnd},
    {"==", BinaryOp::Eq},  {"!=", BinaryOp::Ne},     {"<", BinaryOp::Lt},
    {"<=", BinaryOp::Le},  {">", BinaryOp::Gt},      {">=", BinaryOp::Ge},
    {"<<", BinaryOp::Shl}, {">>", BinaryOp::Shr},    {"+", BinaryOp::Add},
    {"-", BinaryOp::Sub},  {"*", BinaryOp::Mul},
};

constexpr int kMaxPrecedence = 11;

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : tokens_(tokens) {}

  Program program() {
    Program p;
    while (!at_end()) p.statements.push_back(statement());
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    static const Token end{TokenKind::End, "end of input", {}};
    const auto i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : end;
  }

  bool at_end() const { return pos_ >= tokens_.size(); }

  SourceLoc here() const {
    if (!at_end()) return peek().loc;
    if (tokens_.empty()) return {1, 1};
    const Token& last = tokens_.back();
    return {last.loc.line, static_cast<std::uint32_t>(last.loc.col + last.lexeme.size())};
  }

  const Token& next() { return tokens_[pos_++]; }

  bool accept(TokenKind kind, std::string_view text) {
    if (peek().is(kind, text)) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail_expected(std::initializer_list<std::string_view> expected) const {
    std::string msg = "expected ";
    if (expected.size() > 1) msg += "one of ";
    bool first = true;
    for (auto e : expected) {
      if (!first) msg += ", ";
      msg += e;
      first = false;
    }
    msg += " but found ";
    msg += at_end() ? "end of input" : "'" + peek().lexeme + "'";
    throw SpecError(Stage::Parse, here(), msg);
  }

  [[noreturn]] void unsupported(const Token& tok, const std::string& what) const {
    throw SpecError(Stage::Parse, tok.loc, "unsupported construct: " + what);
  }

  void expect(TokenKind kind, std::string_view text) {
    if (!accept(kind, text)) {
      const std::string quoted = "'" + std::string(text) + "'";
      fail_expected({quoted});
    }
  }

  Stmt statement() {
    const Token& tok = peek();
    if (tok.kind == TokenKind::Keyword) {
      if (tok.lexeme == "for") return for_statement();
      if (tok.lexeme == "if") return if_statement();
      if (tok.lexeme == "assert") {
        Stmt s;
        s.kind = Stmt::Kind::Assert;
        s.loc = next().loc;
        expect(TokenKind::Punct, "(");
        s.value = expression();
        expect(TokenKind::Punct, ")");
        expect(TokenKind::Punct, ";");
        return s;
      }
      if (tok.lexeme == "print") {
        Stmt s;
        s.kind = Stmt::Kind::Print;
        s.loc = next().loc;
        s.value = expression();
        expect(TokenKind::Punct, ";");
        return s;
      }
      if (tok.lexeme == "break" || tok.lexeme == "continue") {
        unsupported(tok, "'" + tok.lexeme + "' cannot be used; loops run to their ground bound");
      }
      if (tok.lexeme == "minimize" || tok.lexeme == "maximize") {
        unsupported(tok, "optimisation objective '" + tok.lexeme + "'");
      }
      if (tok.lexeme == "procedure" || tok.lexeme == "call" || tok.lexeme == "return" ||
          tok.lexeme == "function") {
        unsupported(tok, "procedures ('" + tok.lexeme + "')");
      }
      if (tok.lexeme == "while" || tok.lexeme == "do") {
        unsupported(tok, "'" + tok.lexeme + "' loops; use for with a ground bound");
      }
      fail_expected({"statement"});
    }
    if (tok.is(TokenKind::Punct, "{")) {
      Stmt s;
      s.kind = Stmt::Kind::Block;
      s.loc = next().loc;
      while (!peek().is(TokenKind::Punct, "}")) {
        if (at_end()) fail_expected({"'}'"});
        s.body.push_back(statement());
      }
      ++pos_;
      return s;
    }
    if (tok.kind == TokenKind::Identifier) {
      Stmt s = simple_statement(false);
      expect(TokenKind::Punct, ";");
      return s;
    }
    fail_expected({"statement"});
  }

  // assignment, compound assignment, or (only in a for step) `x++`
  Stmt simple_statement(bool in_for_step) {
    if (peek().kind != TokenKind::Identifier) fail_expected({"identifier"});
    Stmt s;
    s.loc = peek().loc;
    s.target = variable();
    const Token& op = peek();
    if (op.is(TokenKind::Operator, "++")) {
      if (!in_for_step) unsupported(op, "'++' is only allowed as a for-loop step");
      ++pos_;
      s.kind = Stmt::Kind::Increment;
      return s;
    }
    if (op.is(TokenKind::Operator, "--")) unsupported(op, "operator '--'");
    if (op.kind == TokenKind::Operator) {
      for (const auto& a : kAssignOps) {
        if (op.lexeme == a.text) {
          ++pos_;
          s.kind = Stmt::Kind::Assign;
          s.assign_op = a.op;
          s.value = expression();
          return s;
        }
      }
    }
    if (op.is(TokenKind::Punct, "(")) unsupported(op, "procedure call");
    fail_expected({"'='", "compound assignment operator"});
  }

  Stmt for_statement() {
    Stmt s;
    s.kind = Stmt::Kind::For;
    s.loc = next().loc;
    expect(TokenKind::Punct, "(");
    s.header.push_back(simple_statement(false));
    expect(TokenKind::Punct, ";");
    s.value = expression();
    expect(TokenKind::Punct, ";");
    s.header.push_back(simple_statement(true));
    expect(TokenKind::Punct, ")");
    s.body.push_back(statement());
    return s;
  }

  Stmt if_statement() {
    Stmt s;
    s.kind = Stmt::Kind::If;
    s.loc = next().loc;
    expect(TokenKind::Punct, "(");
    s.value = expression();
    expect(TokenKind::Punct, ")");
    s.body.push_back(statement());
    if (accept(TokenKind::Keyword, "else")) {
      s.has_else = true;
      s.else_body.push_back(statement());
    }
    return s;
  }

  Expr variable() {
    const Token& tok = next();
    Expr e;
    e.kind = Expr::Kind::Var;
    e.loc = tok.loc;
    e.name = tok.lexeme;
    while (accept(TokenKind::Punct, "[")) {
      e.indices.push_back(expression());
      expect(TokenKind::Punct, "]");
    }
    return e;
  }

  Expr expression() { return binary(1); }

  std::optional<BinaryOp> binary_op_at(int level) const {
    const Token& tok = peek();
    if (tok.kind != TokenKind::Operator) return std::nullopt;
    for (const auto& b : kBinaryOps) {
      if (tok.lexeme == b.text && precedence(b.op) == level) return b.op;
    }
    return std::nullopt;
  }

  Expr binary(int level) {
    if (level > kMaxPrecedence) return unary();
    Expr lhs = binary(level + 1);
    while (auto op = binary_op_at(level)) {
      const SourceLoc loc = next().loc;
      Expr rhs = binary(level + 1);
      Expr e;
      e.kind = Expr::Kind::Binary;
      e.loc = loc;
      e.binary_op = *op;
      e.operands.push_back(std::move(lhs));
      e.operands.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    const Token& tok = peek();
    if (level == kMaxPrecedence && tok.kind == TokenKind::Operator &&
        (tok.lexeme == "/" || tok.lexeme == "%")) {
      unsupported(tok, "operator '" + tok.lexeme + "' (division and modulo are not available)");
    }
    return lhs;
  }

  Expr unary() {
    const Token& tok = peek();
    if (tok.kind == TokenKind::Operator) {
      std::optional<UnaryOp> op;
      if (tok.lexeme == "!") op = UnaryOp::Not;
      if (tok.lexeme == "-") op = UnaryOp::Neg;
      if (tok.lexeme == "~") op = UnaryOp::BitNot;
      if (tok.lexeme == "--" || tok.lexeme == "++") unsupported(tok, "operator '" + tok.lexeme + "'");
      if (op) {
        Expr e;
        e.kind = Expr::Kind::Unary;
        e.loc = next().loc;
        e.unary_op = *op;
        e.operands.push_back(unary());
        return e;
      }
    }
    return primary();
  }

  Expr primary() {
    const Token& tok = peek();
    Expr e;
    e.loc = tok.loc;
    if (tok.kind == TokenKind::Natural) {
      ++pos_;
      e.kind = Expr::Kind::Natural;
      const auto* first = tok.lexeme.data();
      const auto* last = first + tok.lexeme.size();
      auto [ptr, ec] = std::from_chars(first, last, e.number);
      if (ec != std::errc{} || ptr != last) {
        throw SpecError(Stage::Parse, tok.loc, "number literal '" + tok.lexeme + "' is too large");
      }
      return e;
    }
    if (tok.is(TokenKind::Keyword, "true") || tok.is(TokenKind::Keyword, "false")) {
      ++pos_;
      e.kind = Expr::Kind::Boolean;
      e.truth = tok.lexeme == "true";
      return e;
    }
    if (tok.is(TokenKind::Keyword, "ite")) {
      ++pos_;
      e.kind = Expr::Kind::Ite;
      expect(TokenKind::Punct, "(");
      e.operands.push_back(expression());
      expect(TokenKind::Punct, ",");
      e.operands.push_back(expression());
      expect(TokenKind::Punct, ",");
      e.operands.push_back(expression());
      expect(TokenKind::Punct, ")");
      return e;
    }
    if (tok.kind == TokenKind::Identifier) {
      if (peek(1).is(TokenKind::Punct, "(")) {
        unsupported(peek(1), "call of '" + tok.lexeme + "' (only ite(...) may be called)");
      }
      return variable();
    }
    if (accept(TokenKind::Punct, "(")) {
      Expr inner = expression();
      expect(TokenKind::Punct, ")");
      return inner;
    }
    fail_expected({"expression"});
  }

  std::span<const Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse(std::span<const Token> tokens) { return Parser(tokens).program(); }

Program parse_source(std::string_view source) {
  const auto tokens = tokenize(source);
  return parse(tokens);
}

}  // namespace symcert
