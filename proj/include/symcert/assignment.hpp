#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace symcert {

/// Partial map from positive variable ids to truth values.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::uint32_t num_vars) : values_(num_vars + 1, kUnset) {}

  void set(std::uint32_t var, bool value) {
    if (var >= values_.size()) values_.resize(var + 1, kUnset);
    values_[var] = value ? 1 : 0;
  }

  std::optional<bool> get(std::uint32_t var) const {
    if (var >= values_.size() || values_[var] == kUnset) return std::nullopt;
    return values_[var] == 1;
  }

  bool contains(std::uint32_t var) const { return get(var).has_value(); }

  /// Largest variable id the assignment has room for.
  std::uint32_t max_var() const {
    return values_.empty() ? 0 : static_cast<std::uint32_t>(values_.size() - 1);
  }

  std::size_t assigned_count() const {
    std::size_t n = 0;
    for (auto v : values_) n += v != kUnset;
    return n;
  }

  friend bool operator==(const Assignment& a, const Assignment& b) {
    const auto n = std::max(a.values_.size(), b.values_.size());
    for (std::size_t i = 1; i < n; ++i) {
      if (a.get(static_cast<std::uint32_t>(i)) != b.get(static_cast<std::uint32_t>(i))) return false;
    }
    return true;
  }

 private:
  static constexpr std::int8_t kUnset = -1;
  std::vector<std::int8_t> values_;
};

}  // namespace symcert
