#include "symcert/word.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace symcert {

namespace {

void require_same_width(const SymWord& a, const SymWord& b) {
  if (a.width() != b.width()) {
    throw std::invalid_argument("word width mismatch: " + std::to_string(a.width()) + " vs " +
                                std::to_string(b.width()));
  }
}

}  // namespace

SymWord WordBuilder::constant(std::uint64_t value, unsigned width) const {
  SymWord w;
  w.bits.reserve(width);
  for (unsigned i = 0; i < width; ++i) {
    const bool bit = i < 64 && ((value >> i) & 1U);
    w.bits.push_back(store_.constant(bit));
  }
  return w;
}

SymWord WordBuilder::fresh(unsigned width) {
  SymWord w;
  w.bits.reserve(width);
  for (unsigned i = 0; i < width; ++i) w.bits.push_back(store_.fresh_var());
  return w;
}

std::optional<std::uint64_t> WordBuilder::ground_value(const SymWord& w) const {
  std::uint64_t value = 0;
  for (unsigned i = 0; i < w.width(); ++i) {
    const auto bit = store_.const_value(w.bits[i]);
    if (!bit) return std::nullopt;
    if (*bit && i < 64) value |= std::uint64_t{1} << i;
  }
  return value;
}

SymWord WordBuilder::add_from(const SymWord& acc, const SymWord& addend, unsigned offset,
                              Formula carry) {
  SymWord out = acc;
  for (unsigned i = offset; i < acc.width(); ++i) {
    const Formula a = acc.bits[i];
    const Formula b = addend.bits[i];
    const Formula half = store_.mk_xor(a, b);
    out.bits[i] = store_.mk_xor(half, carry);
    if (i + 1 < acc.width()) {
      carry = store_.mk_or(store_.mk_and(a, b), store_.mk_and(carry, half));
    }
  }
  return out;
}

SymWord WordBuilder::add(const SymWord& a, const SymWord& b) {
  require_same_width(a, b);
  return add_from(a, b, 0, FormulaStore::kFalse);
}

SymWord WordBuilder::sub(const SymWord& a, const SymWord& b) {
  require_same_width(a, b);
  // a - b = a + ~b + 1 (mod 2^w)
  return add_from(a, bit_not(b), 0, FormulaStore::kTrue);
}

SymWord WordBuilder::neg(const SymWord& a) { return sub(constant(0, a.width()), a); }

SymWord WordBuilder::mul(const SymWord& a, const SymWord& b) {
  require_same_width(a, b);
  const unsigned width = a.width();
  // Shift-and-add over the bits of the multiplier. A ground multiplier keeps
  // only the partial products of its set bits, so prefer it in that role.
  const bool swap = ground_value(a).has_value() && !ground_value(b).has_value();
  const SymWord& multiplicand = swap ? b : a;
  const SymWord& multiplier = swap ? a : b;

  SymWord acc = constant(0, width);
  for (unsigned i = 0; i < width; ++i) {
    const Formula selector = multiplier.bits[i];
    if (selector == FormulaStore::kFalse) continue;
    SymWord partial = constant(0, width);
    for (unsigned j = i; j < width; ++j) {
      partial.bits[j] = store_.mk_and(multiplicand.bits[j - i], selector);
    }
    acc = add_from(acc, partial, i, FormulaStore::kFalse);
  }
  return acc;
}

SymWord WordBuilder::bit_and(const SymWord& a, const SymWord& b) {
  require_same_width(a, b);
  SymWord out = a;
  for (unsigned i = 0; i < a.width(); ++i) out.bits[i] = store_.mk_and(a.bits[i], b.bits[i]);
  return out;
}

SymWord WordBuilder::bit_or(const SymWord& a, const SymWord& b) {
  require_same_width(a, b);
  SymWord out = a;
  for (unsigned i = 0; i < a.width(); ++i) out.bits[i] = store_.mk_or(a.bits[i], b.bits[i]);
  return out;
}

SymWord WordBuilder::bit_xor(const SymWord& a, const SymWord& b) {
  require_same_width(a, b);
  SymWord out = a;
  for (unsigned i = 0; i < a.width(); ++i) out.bits[i] = store_.mk_xor(a.bits[i], b.bits[i]);
  return out;
}

SymWord WordBuilder::bit_not(const SymWord& a) {
  SymWord out = a;
  for (auto& bit : out.bits) bit = store_.mk_not(bit);
  return out;
}

SymWord WordBuilder::shl(const SymWord& a, std::uint64_t amount) {
  SymWord out = constant(0, a.width());
  for (unsigned i = 0; i < a.width(); ++i) {
    if (amount <= i) out.bits[i] = a.bits[i - amount];
  }
  return out;
}

SymWord WordBuilder::shr(const SymWord& a, std::uint64_t amount) {
  SymWord out = constant(0, a.width());
  for (unsigned i = 0; i < a.width(); ++i) {
    if (amount < a.width() - i) out.bits[i] = a.bits[i + amount];
  }
  return out;
}

Formula WordBuilder::eq(const SymWord& a, const SymWord& b) {
  require_same_width(a, b);
  Formula result = FormulaStore::kTrue;
  for (unsigned i = 0; i < a.width(); ++i) {
    result = store_.mk_and(result, store_.mk_iff(a.bits[i], b.bits[i]));
    if (result == FormulaStore::kFalse) break;
  }
  return result;
}

Formula WordBuilder::ult(const SymWord& a, const SymWord& b) {
  require_same_width(a, b);
  // Scan from the least significant bit: a higher differing bit overrides.
  Formula less = FormulaStore::kFalse;
  for (unsigned i = 0; i < a.width(); ++i) {
    const Formula ai = a.bits[i];
    const Formula bi = b.bits[i];
    less = store_.mk_ite(store_.mk_xor(ai, bi), bi, less);
  }
  return less;
}

Formula WordBuilder::cmp(CmpOp op, const SymWord& a, const SymWord& b) {
  switch (op) {
    case CmpOp::Eq: return eq(a, b);
    case CmpOp::Ne: return store_.mk_not(eq(a, b));
    case CmpOp::Lt: return ult(a, b);
    case CmpOp::Le: return store_.mk_not(ult(b, a));
    case CmpOp::Gt: return ult(b, a);
    case CmpOp::Ge: return store_.mk_not(ult(a, b));
  }
  throw std::invalid_argument("unknown comparison");
}

SymWord WordBuilder::ite(Formula c, const SymWord& then_w, const SymWord& else_w) {
  require_same_width(then_w, else_w);
  SymWord out = then_w;
  for (unsigned i = 0; i < then_w.width(); ++i) {
    out.bits[i] = store_.mk_ite(c, then_w.bits[i], else_w.bits[i]);
  }
  return out;
}

std::uint64_t eval_word(Evaluator& evaluator, const SymWord& w) {
  std::uint64_t value = 0;
  for (unsigned i = 0; i < w.width() && i < 64; ++i) {
    if (evaluator(w.bits[i])) value |= std::uint64_t{1} << i;
  }
  return value;
}

}  // namespace symcert
