#pragma once

#include <vector>

#include "equi/literal.hpp"

namespace equi {

// An unsigned integer in binary representation, least significant bit first.
// value = sum of bit_i * 2^(i-1); no monotonicity contract.
class BinaryInt {
public:
  BinaryInt() = default;
  explicit BinaryInt(std::vector<Lit> bits) : bits_(std::move(bits)) {}

  static BinaryInt constant(unsigned long long v, int width) {
    std::vector<Lit> bits;
    bits.reserve(static_cast<size_t>(width));
    for (int i = 0; i < width; ++i)
      bits.push_back((v >> i) & 1u ? Lit::t() : Lit::f());
    return BinaryInt(std::move(bits));
  }

  int width() const { return static_cast<int>(bits_.size()); }
  const std::vector<Lit>& bits() const { return bits_; }
  Lit bit(int i) const { return bits_.at(static_cast<size_t>(i) - 1); } // 1-based, lsb

  // Bit i (1-based), reading const_false past the top.
  Lit bit_or_false(int i) const {
    if (i > width()) return Lit::f();
    return bits_[static_cast<size_t>(i) - 1];
  }

  unsigned long long max_value() const {
    return width() >= 63 ? ~0ull : (1ull << width()) - 1;
  }

private:
  std::vector<Lit> bits_;
};

} // namespace equi
