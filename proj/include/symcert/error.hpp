#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symcert {

struct SourceLoc {
  std::uint32_t line = 0;
  std::uint32_t col = 0;

  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

/// Pipeline stage in which a SpecError was raised.
enum class Stage { Lex, Parse, Execute, Encode, Solve, Io };

std::string_view stage_name(Stage stage);

/// User-facing error carrying the stage and, where known, a source location.
class SpecError : public std::runtime_error {
 public:
  SpecError(Stage stage, SourceLoc loc, const std::string& message);
  SpecError(Stage stage, const std::string& message);

  Stage stage() const noexcept { return stage_; }
  const SourceLoc& loc() const noexcept { return loc_; }
  bool has_loc() const noexcept { return loc_.line != 0; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Stage stage_;
  SourceLoc loc_;
  std::string detail_;
};

}  // namespace symcert
