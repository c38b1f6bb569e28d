#pragma once

#include <string>
#include <vector>

#include "equi/binary.hpp"
#include "equi/literal.hpp"
#include "equi/unary.hpp"

namespace equi {

enum class Rel { Leq, Geq, Eq, Lt, Gt, Neq };
enum class BOp { Or, And, Xor, Iff };
enum class AOp { Plus, Times, Div, Mod, Max, Min };

inline const char* rel_name(Rel r) {
  switch (r) {
    case Rel::Leq: return "leq";
    case Rel::Geq: return "geq";
    case Rel::Eq: return "eq";
    case Rel::Lt: return "lt";
    case Rel::Gt: return "gt";
    case Rel::Neq: return "neq";
  }
  return "?";
}

inline const char* bop_name(BOp o) {
  switch (o) {
    case BOp::Or: return "or";
    case BOp::And: return "and";
    case BOp::Xor: return "xor";
    case BOp::Iff: return "iff";
  }
  return "?";
}

inline const char* aop_name(AOp o) {
  switch (o) {
    case AOp::Plus: return "plus";
    case AOp::Times: return "times";
    case AOp::Div: return "div";
    case AOp::Mod: return "mod";
    case AOp::Max: return "max";
    case AOp::Min: return "min";
  }
  return "?";
}

// Canonical constraint kinds after lowering. Surface forms that are pure
// renamings (int_lt, bool_op_reif, ...) are normalized away by the parser.
enum class Kind {
  BoolEq,          // x[0] == x[1]
  BoolArrayOp,     // bop over L[0] holds
  BoolArrayOpReif, // bop over L[0] <-> x[0]
  Comparator,      // sort(x0,x1) = (x2,x3)

  IntEq,      // I[0] == I[1]
  IntNeq,     // I[0] != I[1]
  IntLeq,     // I[0] <= I[1]
  IntLeqReif, // I[0] <= I[1] <-> x[0]
  IntEqReif,  // I[0] == I[1] <-> x[0]

  IntPlus,  // I[0] + I[1] == I[2]   (relax flag: <=-only context)
  IntTimes, // I[0] * I[1] == I[2]
  IntDiv,   // floor(I[0] / I[1]) == I[2]
  IntMod,   // I[0] mod I[1] == I[2]
  IntMax,   // max(I[0], I[1]) == I[2]
  IntMin,
  IntAbs, // |I[0]| == I[1]

  IntArrayAllDiff, // pairwise neq over I
  IntArrayOp,      // aop-fold over I[0..n-2] == I[n-1] (plus/times/max/min)
  IntArraySumRel,  // sum(I[0..n-2]) rel I[n-1]
  IntArrayLinRel,  // sum(K[i]*I[i]) rel I[n-1]
  IntArraySumModK, // sum(I[0..n-2]) mod K[0] == I[n-1]

  BoolArraySumRel,  // sum(L[0]) rel I[0]
  BoolArrayPbRel,   // sum(K[i]*L[0][i]) rel I[0]
  BoolArraySumModK, // sum(L[0]) mod K[0] == I[0]

  BoolArraysLex,     // L[0] lex<= L[1]; K[0]=1 for strict
  BoolArraysLexReif, // (L[0] lex<= L[1]) <-> x[0]; K[0]=1 for strict
  IntArraysLex,      // int arrays lex; I split via K[1]=|first|; K[0]=strict

  BinArraySumEq, // sum(B[0..n-2]) == B[n-1]
  BinTimes,      // B[0]*B[1] == B[2]
  BinSquare,     // B[0]^2 == B[1]
  Int2Binary,    // channel I[0] == B[0]
};

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::BoolEq: return "bool_eq";
    case Kind::BoolArrayOp: return "bool_array_op";
    case Kind::BoolArrayOpReif: return "bool_array_op_reif";
    case Kind::Comparator: return "comparator";
    case Kind::IntEq: return "int_eq";
    case Kind::IntNeq: return "int_neq";
    case Kind::IntLeq: return "int_leq";
    case Kind::IntLeqReif: return "int_leq_reif";
    case Kind::IntEqReif: return "int_eq_reif";
    case Kind::IntPlus: return "int_plus";
    case Kind::IntTimes: return "int_times";
    case Kind::IntDiv: return "int_div";
    case Kind::IntMod: return "int_mod";
    case Kind::IntMax: return "int_max";
    case Kind::IntMin: return "int_min";
    case Kind::IntAbs: return "int_abs";
    case Kind::IntArrayAllDiff: return "int_array_allDiff";
    case Kind::IntArrayOp: return "int_array_op";
    case Kind::IntArraySumRel: return "int_array_sum_rel";
    case Kind::IntArrayLinRel: return "int_array_lin_rel";
    case Kind::IntArraySumModK: return "int_array_sum_modK";
    case Kind::BoolArraySumRel: return "bool_array_sum_rel";
    case Kind::BoolArrayPbRel: return "bool_array_pb_rel";
    case Kind::BoolArraySumModK: return "bool_array_sum_modK";
    case Kind::BoolArraysLex: return "bool_arrays_lex";
    case Kind::BoolArraysLexReif: return "bool_arrays_lex_reif";
    case Kind::IntArraysLex: return "int_arrays_lex";
    case Kind::BinArraySumEq: return "binary_array_sum_eq";
    case Kind::BinTimes: return "binary_times";
    case Kind::BinSquare: return "binary_square";
    case Kind::Int2Binary: return "int2binary";
  }
  return "?";
}

struct Constraint {
  Kind kind{};
  Rel rel = Rel::Eq;
  BOp bop = BOp::Or;
  AOp aop = AOp::Plus;

  std::vector<std::vector<Lit>> L; // literal arrays
  std::vector<Lit> x;              // scalar literals
  std::vector<UnaryInt> I;         // unary integers (constants included)
  std::vector<BinaryInt> B;        // binary integers
  std::vector<long long> K;        // integer constants

  bool alive = true;
  bool relax = false; // generated in a <=-only context: one-sided comparators ok
  int group = -1;     // CEP group id, -1 = none
  int id = -1;
  int parent = -1; // constraint this was decomposed from

  std::string label() const {
    std::string s = kind_name(kind);
    if (kind == Kind::BoolArrayOp || kind == Kind::BoolArrayOpReif) {
      s += "(";
      s += bop_name(bop);
      s += ")";
    }
    if (kind == Kind::BoolArraySumRel || kind == Kind::IntArraySumRel ||
        kind == Kind::BoolArrayPbRel || kind == Kind::IntArrayLinRel) {
      s += "(";
      s += rel_name(rel);
      s += ")";
    }
    if (kind == Kind::IntArrayOp) {
      s += "(";
      s += aop_name(aop);
      s += ")";
    }
    return s;
  }
};

} // namespace equi
