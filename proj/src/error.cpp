#include "symcert/error.hpp"

namespace symcert {

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::Lex: return "lex";
    case Stage::Parse: return "parse";
    case Stage::Execute: return "execute";
    case Stage::Encode: return "encode";
    case Stage::Solve: return "solve";
    case Stage::Io: return "io";
  }
  return "unknown";
}

namespace {

std::string format_message(Stage stage, SourceLoc loc, const std::string& message) {
  std::string out;
  if (loc.line != 0) {
    out += std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": ";
  }
  out += std::string(stage_name(stage)) + " error: " + message;
  return out;
}

}  // namespace

SpecError::SpecError(Stage stage, SourceLoc loc, const std::string& message)
    : std::runtime_error(format_message(stage, loc, message)),
      stage_(stage),
      loc_(loc),
      detail_(message) {}

SpecError::SpecError(Stage stage, const std::string& message)
    : SpecError(stage, SourceLoc{}, message) {}

}  // namespace symcert
