#pragma once

#include <vector>

#include "equi/base.hpp"
#include "equi/equiv.hpp"
#include "equi/literal.hpp"

namespace equi {

// An integer in unary order-encoding: offset plus a monotone bit vector,
// where bit j (1-based) means value >= offset + j. Thresholds outside the
// vector read as sentinels: true to the left, false to the right. An empty
// vector denotes the constant `offset`.
class UnaryInt {
public:
  UnaryInt() = default;
  UnaryInt(long long offset, std::vector<Lit> bits)
      : offset_(offset), bits_(std::move(bits)) {}

  static UnaryInt constant(long long v) { return UnaryInt(v, {}); }

  long long lo() const { return offset_; }
  long long hi() const { return offset_ + static_cast<long long>(bits_.size()); }
  long long offset() const { return offset_; }
  int width() const { return static_cast<int>(bits_.size()); }
  bool is_const() const { return bits_.empty(); }

  const std::vector<Lit>& bits() const { return bits_; }
  Lit bit(int j) const { return bits_.at(static_cast<size_t>(j) - 1); } // 1-based

  // Literal for "value >= v", with sentinel constants beyond the ends.
  Lit geq_lit(long long v) const {
    if (v <= offset_) return Lit::t();
    if (v > hi()) return Lit::f();
    return bits_[static_cast<size_t>(v - offset_ - 1)];
  }

  // The same integer shifted by d: value(view) = value(*this) + d.
  UnaryInt shifted(long long d) const { return UnaryInt(offset_ + d, bits_); }

  // -value as a view: bits reversed and negated, offset = -hi.
  UnaryInt negated() const {
    std::vector<Lit> out(bits_.rbegin(), bits_.rend());
    for (auto& l : out) l = ~l;
    return UnaryInt(-hi(), std::move(out));
  }

  static long long floordiv(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static long long ceildiv(long long a, long long b) { return -floordiv(-a, b); }

  // k*value (k != 0) as a view built by threshold selection; no clauses.
  UnaryInt scaled(long long k) const {
    if (k == 0) return constant(0);
    long long nlo = k > 0 ? k * lo() : k * hi();
    long long nhi = k > 0 ? k * hi() : k * lo();
    if (nhi - nlo > 2000000) fail("scaled value too wide for the unary order-encoding");
    std::vector<Lit> out;
    out.reserve(static_cast<size_t>(nhi - nlo));
    for (long long v = nlo + 1; v <= nhi; ++v) {
      if (k > 0)
        out.push_back(geq_lit(ceildiv(v, k))); // k*x >= v  <=>  x >= ceil(v/k)
      else
        out.push_back(~geq_lit(floordiv(v, k) + 1)); // <=> x <= floor(v/k)
    }
    return UnaryInt(nlo, std::move(out));
  }

  // floor(value/k) for constant k >= 1, by threshold selection; no clauses.
  UnaryInt div_const(long long k) const {
    long long nlo = floordiv(lo(), k);
    long long nhi = floordiv(hi(), k);
    std::vector<Lit> out;
    out.reserve(static_cast<size_t>(nhi - nlo));
    for (long long v = nlo + 1; v <= nhi; ++v)
      out.push_back(geq_lit(v * k)); // floor(x/k) >= v  <=>  x >= v*k
    return UnaryInt(nlo, std::move(out));
  }

  // Resolved view of every bit.
  std::vector<Lit> resolved_bits(const EquivStore& s) const {
    std::vector<Lit> out(bits_);
    for (auto& l : out) l = s.resolve(l);
    return out;
  }

private:
  long long offset_ = 0;
  std::vector<Lit> bits_;
};

} // namespace equi
