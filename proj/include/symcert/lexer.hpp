#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "symcert/error.hpp"

namespace symcert {

enum class TokenKind { Identifier, Natural, Keyword, Operator, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string lexeme;
  SourceLoc loc;

  bool is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
};

/// Splits program text into tokens, dropping whitespace and `/* */` and `//`
/// comments. Identifiers must start with `n` (naturals) or `b` (booleans).
/// Throws SpecError(Stage::Lex) on any lexical error. The returned sequence
/// does not include an End token.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word);

}  // namespace symcert
