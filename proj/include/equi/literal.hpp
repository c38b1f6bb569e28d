#pragma once

#include <cassert>
#include <cstdint>
#include <string>

namespace equi {

// A Boolean literal: a possibly-negated variable or one of the two constants.
// Encoded as code = 2*var + sign. Variable ids start at 1; var 0 is reserved
// for the constants, so T has code 0 and F has code 1, and negation is always
// a flip of the low bit.
class Lit {
public:
  Lit() : code_(0) {}

  static Lit t() { return Lit(0u); }
  static Lit f() { return Lit(1u); }

  static Lit make(uint32_t var, bool negated = false) {
    assert(var >= 1);
    return Lit(2 * var + (negated ? 1u : 0u));
  }

  static Lit from_code(uint32_t code) { return Lit(code); }
  uint32_t code() const { return code_; }

  bool is_const() const { return code_ < 2; }
  bool is_true() const { return code_ == 0; }
  bool is_false() const { return code_ == 1; }
  bool is_var() const { return code_ >= 2; }

  uint32_t var() const { return code_ >> 1; }
  bool negated() const { return code_ & 1u; }

  Lit operator~() const { return Lit(code_ ^ 1u); }
  Lit with_sign(bool flip) const { return flip ? ~*this : *this; }

  bool operator==(const Lit& o) const { return code_ == o.code_; }
  bool operator!=(const Lit& o) const { return code_ != o.code_; }
  bool operator<(const Lit& o) const { return code_ < o.code_; }

  std::string str() const {
    if (is_true()) return "T";
    if (is_false()) return "F";
    return (negated() ? "-v" : "v") + std::to_string(var());
  }

private:
  explicit Lit(uint32_t code) : code_(code) {}
  uint32_t code_;
};

} // namespace equi
