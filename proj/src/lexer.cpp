#include "symcert/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace symcert {

namespace {

constexpr std::array<std::string_view, 18> kKeywords = {
    "for",   "if",        "else",     "assert",   "print",     "ite",
    "true",  "false",     "break",    "continue", "while",     "do",
    "procedure", "call",  "return",   "minimize", "maximize",  "function",
};

// Longest operators first so that matching is maximal-munch.
constexpr std::array<std::string_view, 35> kOperators = {
    "^^=", "&&=", "||=", "<<=", ">>=",
    "^^", "&&", "||", "<<", ">>", "==", "!=", "<=", ">=", "+=", "-=", "*=",
    "&=", "|=", "^=", "++", "--",
    "+", "-", "*", "/", "%", "&", "|", "^", "~", "!", "<", ">", "=",
};

constexpr std::string_view kPunct = "()[]{};,";

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  std::uint32_t line = 1;
  std::uint32_t col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (pos < src.size()) {
    const char c = src[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const SourceLoc loc{line, col};
    if (src.substr(pos, 2) == "//") {
      while (pos < src.size() && src[pos] != '\n') advance(1);
      continue;
    }
    if (src.substr(pos, 2) == "/*") {
      const auto end = src.find("*/", pos + 2);
      if (end == std::string_view::npos) throw SpecError(Stage::Lex, loc, "unterminated comment");
      advance(end + 2 - pos);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos;
      while (end < src.size() && std::isdigit(static_cast<unsigned char>(src[end]))) ++end;
      if (end < src.size() && is_ident_char(src[end])) {
        throw SpecError(Stage::Lex, loc, "malformed number literal (only decimal digits are allowed)");
      }
      tokens.push_back({TokenKind::Natural, std::string(src.substr(pos, end - pos)), loc});
      advance(end - pos);
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t end = pos;
      while (end < src.size() && is_ident_char(src[end])) ++end;
      std::string word(src.substr(pos, end - pos));
      if (is_keyword(word)) {
        tokens.push_back({TokenKind::Keyword, std::move(word), loc});
      } else if (word[0] == 'n' || word[0] == 'b') {
        tokens.push_back({TokenKind::Identifier, std::move(word), loc});
      } else {
        throw SpecError(Stage::Lex, loc,
                        "identifier '" + word +
                            "' must start with 'n' (natural) or 'b' (boolean)");
      }
      advance(end - pos);
      continue;
    }
    if (kPunct.find(c) != std::string_view::npos) {
      tokens.push_back({TokenKind::Punct, std::string(1, c), loc});
      advance(1);
      continue;
    }
    bool matched = false;
    for (auto op : kOperators) {
      if (src.substr(pos, op.size()) == op) {
        tokens.push_back({TokenKind::Operator, std::string(op), loc});
        advance(op.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw SpecError(Stage::Lex, loc, std::string("unexpected character '") + c + "'");
    }
  }
  return tokens;
}

}  // namespace symcert
