#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "equi/constraint.hpp"
#include "equi/model.hpp"

namespace equi {
namespace binext {

// Bits of one binary weight across the numbers being summed,
// least significant bucket first.
using BucketMatrix = std::vector<std::vector<Lit>>;

inline Constraint mk_or(std::vector<Lit> lits) {
  Constraint c;
  c.kind = Kind::BoolArrayOp;
  c.bop = BOp::Or;
  c.L = {std::move(lits)};
  return c;
}

inline Constraint mk_and_reif(std::vector<Lit> ms, Lit r) {
  Constraint c;
  c.kind = Kind::BoolArrayOpReif;
  c.bop = BOp::And;
  c.L = {std::move(ms)};
  c.x = {r};
  return c;
}

// Defining clauses for b <-> (value of u is odd), exploiting sortedness of
// the order-encoding: the value is the largest true threshold.
// Requires u.offset == 0 (internal carriers only).
inline void mod2_clauses(const UnaryInt& u, Lit b, std::vector<Constraint>& out) {
  long long n = u.hi();
  // odd value 2k-1: (b | ~u_{2k-1} | u_{2k})
  for (long long k = 1; 2 * k - 1 <= n; ++k)
    out.push_back(mk_or({b, ~u.geq_lit(2 * k - 1), u.geq_lit(2 * k)}));
  // value 0: (~b | u_1)
  out.push_back(mk_or({~b, u.geq_lit(1)}));
  // even value 2k: (~b | ~u_{2k} | u_{2k+1})
  for (long long k = 1; 2 * k <= n; ++k)
    out.push_back(mk_or({~b, ~u.geq_lit(2 * k), u.geq_lit(2 * k + 1)}));
}

// value(u) div 2: the even-positioned thresholds, no clauses.
inline UnaryInt div2(const UnaryInt& u) { return u.div_const(2); }

// Channel a nonnegative unary carrier (offset 0) into binary bits, binding
// sum bits past the carrier's reach to false. This is buckets2binary with no
// buckets left: peel one output bit per halving of the carry.
inline void carry_to_binary(Model& m, UnaryInt carry, const BinaryInt& sum, int first_bit,
                            std::vector<Constraint>& out) {
  int j = first_bit;
  while (carry.hi() > 0) {
    Lit b = sum.bit_or_false(j);
    mod2_clauses(carry, b, out);
    carry = div2(carry);
    ++j;
  }
  for (; j <= sum.width(); ++j) m.store.bind(sum.bit(j), false);
}

// Sum a bucket matrix into a binary number: per-bucket unary counts, then a
// unary ripple of int_plus / div / mod through the carry chain.
inline void sum_buckets_to_binary(Model& m, const BucketMatrix& buckets, const BinaryInt& sum,
                                  std::vector<Constraint>& out) {
  UnaryInt carry = UnaryInt::constant(0);
  int j = 1;
  for (const auto& bucket : buckets) {
    UnaryInt u = m.new_unary(0, static_cast<long long>(bucket.size()));
    if (!bucket.empty()) {
      Constraint c;
      c.kind = Kind::BoolArraySumRel;
      c.rel = Rel::Eq;
      c.L = {bucket};
      c.I = {u};
      out.push_back(std::move(c));
    } else {
      m.assert_lt(u, 1);
    }
    UnaryInt up = m.new_unary(0, u.hi() + carry.hi());
    out.push_back([&] {
      Constraint c;
      c.kind = Kind::IntPlus;
      c.I = {u, carry, up};
      return c;
    }());
    mod2_clauses(up, sum.bit_or_false(j), out);
    carry = div2(up);
    ++j;
  }
  carry_to_binary(m, carry, sum, j, out);
}

// Transpose binary numbers to buckets, dropping resolved-false bits.
inline BucketMatrix transpose(const Model& m, const std::vector<BinaryInt>& nums) {
  int maxw = 0;
  for (const auto& b : nums) maxw = std::max(maxw, b.width());
  BucketMatrix buckets(static_cast<size_t>(maxw));
  for (const auto& b : nums)
    for (int i = 1; i <= b.width(); ++i) {
      Lit l = m.store.resolve(b.bit(i));
      if (l.is_false()) continue;
      buckets[static_cast<size_t>(i) - 1].push_back(l);
    }
  return buckets;
}

inline void decompose_bin_array_sum_eq(Model& m, const std::vector<BinaryInt>& as,
                                       const BinaryInt& sum, std::vector<Constraint>& out) {
  if (as.size() == 1) {
    const BinaryInt& a = as[0];
    int w = std::max(a.width(), sum.width());
    for (int i = 1; i <= w; ++i)
      m.store.merge(a.bit_or_false(i), sum.bit_or_false(i));
    return;
  }
  sum_buckets_to_binary(m, transpose(m, as), sum, out);
}

// Partial product grid for a*b: z_ij <-> a_i & b_j, row j shifted j-1 left.
inline void decompose_bin_times(Model& m, const BinaryInt& a, const BinaryInt& b,
                                const BinaryInt& c, std::vector<Constraint>& out) {
  int n = a.width(), mm = b.width();
  if (n == 0 || mm == 0) {
    for (int i = 1; i <= c.width(); ++i) m.store.bind(c.bit(i), false);
    return;
  }
  std::vector<BinaryInt> rows;
  for (int j = 1; j <= mm; ++j) {
    std::vector<Lit> bits(static_cast<size_t>(j - 1), Lit::f());
    for (int i = 1; i <= n; ++i) {
      Lit z = m.new_bool();
      out.push_back(mk_and_reif({a.bit(i), b.bit(j)}, z));
      bits.push_back(z);
    }
    rows.emplace_back(std::move(bits));
  }
  out.push_back([&] {
    Constraint s;
    s.kind = Kind::BinArraySumEq;
    s.B = rows;
    s.B.push_back(c);
    return s;
  }());
}

// Column structure of the squaring optimization, 0-based weight exponents.
// Diagonal entries a_i sit at weight 2i; each off-diagonal pair z_ij (i<j)
// appears twice at weight i+j, so both occurrences are replaced by a single
// one at weight i+j+1.
struct SquareColumns {
  // per weight exponent: list of (i,j) index pairs, i<=j, 0-based
  std::vector<std::vector<std::pair<int, int>>> cols;
};

inline SquareColumns square_columns(int w) {
  SquareColumns sc;
  sc.cols.resize(static_cast<size_t>(2 * w - 1));
  for (int i = 0; i < w; ++i) sc.cols[static_cast<size_t>(2 * i)].push_back({i, i});
  for (int i = 0; i < w; ++i)
    for (int j = i + 1; j < w; ++j)
      sc.cols[static_cast<size_t>(i + j + 1)].push_back({i, j});
  return sc;
}

struct SquareGrid {
  std::vector<std::vector<Lit>> z; // z[i][j] for i<=j (0-based); z[i][i] = a_i
};

inline SquareGrid decompose_bin_square(Model& m, const BinaryInt& a, const BinaryInt& c,
                                       std::vector<Constraint>& out) {
  int w = a.width();
  SquareGrid g;
  g.z.assign(static_cast<size_t>(w), {});
  for (int i = 0; i < w; ++i) {
    g.z[static_cast<size_t>(i)].assign(static_cast<size_t>(w), Lit::f());
    g.z[static_cast<size_t>(i)][static_cast<size_t>(i)] = a.bit(i + 1);
  }
  for (int i = 0; i < w; ++i)
    for (int j = i + 1; j < w; ++j) {
      Lit z = m.new_bool();
      out.push_back(mk_and_reif({a.bit(i + 1), a.bit(j + 1)}, z));
      g.z[static_cast<size_t>(i)][static_cast<size_t>(j)] = z;
    }
  if (w == 0) {
    for (int i = 1; i <= c.width(); ++i) m.store.bind(c.bit(i), false);
    return g;
  }
  SquareColumns sc = square_columns(w);
  BucketMatrix buckets(sc.cols.size());
  for (size_t e = 0; e < sc.cols.size(); ++e)
    for (auto [i, j] : sc.cols[e])
      buckets[e].push_back(g.z[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  sum_buckets_to_binary(m, buckets, c, out);
  return g;
}

} // namespace binext
} // namespace equi
