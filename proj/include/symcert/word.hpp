#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symcert/formula.hpp"

namespace symcert {

/// Fixed-width unsigned word of formulas, bit 0 least significant.
struct SymWord {
  std::vector<Formula> bits;

  unsigned width() const { return static_cast<unsigned>(bits.size()); }
  friend bool operator==(const SymWord&, const SymWord&) = default;
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

/// Largest supported word width; ground naturals are held in 64 bits.
inline constexpr unsigned kMaxWidth = 64;

inline std::uint64_t width_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

/// Bit-blasting arithmetic over SymWords with unsigned wrap-around (mod 2^w)
/// semantics. All binary operations require equal widths and throw
/// std::invalid_argument otherwise.
class WordBuilder {
 public:
  explicit WordBuilder(FormulaStore& store) : store_(store) {}

  FormulaStore& store() { return store_; }

  SymWord constant(std::uint64_t value, unsigned width) const;
  SymWord fresh(unsigned width);
  /// Value of an all-constant word.
  std::optional<std::uint64_t> ground_value(const SymWord& w) const;

  SymWord add(const SymWord& a, const SymWord& b);
  SymWord sub(const SymWord& a, const SymWord& b);
  SymWord neg(const SymWord& a);
  SymWord mul(const SymWord& a, const SymWord& b);

  SymWord bit_and(const SymWord& a, const SymWord& b);
  SymWord bit_or(const SymWord& a, const SymWord& b);
  SymWord bit_xor(const SymWord& a, const SymWord& b);
  SymWord bit_not(const SymWord& a);
  SymWord shl(const SymWord& a, std::uint64_t amount);
  SymWord shr(const SymWord& a, std::uint64_t amount);

  Formula cmp(CmpOp op, const SymWord& a, const SymWord& b);
  Formula eq(const SymWord& a, const SymWord& b);
  Formula ult(const SymWord& a, const SymWord& b);

  SymWord ite(Formula c, const SymWord& then_w, const SymWord& else_w);

 private:
  // Adds addend into acc starting at bit `offset`; bits below offset of the
  // addend are taken to be zero.
  SymWord add_from(const SymWord& acc, const SymWord& addend, unsigned offset, Formula carry_in);

  FormulaStore& store_;
};

/// Decodes a word under an assignment (unsigned, little-endian bits).
std::uint64_t eval_word(Evaluator& evaluator, const SymWord& w);

}  // namespace symcert
