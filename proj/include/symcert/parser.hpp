#pragma once

#include <span>
#include <string_view>

#include "symcert/ast.hpp"
#include "symcert/lexer.hpp"

namespace symcert {

/// Recursive-descent parser. Throws SpecError(Stage::Parse) with the set of
/// expected tokens on syntax errors, and for constructs that are reserved but
/// not supported (procedures, objectives, break/continue, while).
Program parse(std::span<const Token> tokens);

/// tokenize + parse.
Program parse_source(std::string_view source);

}  // namespace symcert
