#pragma once

#include <string>
#include <vector>

#include "equi/base.hpp"
#include "equi/binary.hpp"
#include "equi/constraint.hpp"
#include "equi/equiv.hpp"
#include "equi/literal.hpp"
#include "equi/unary.hpp"

namespace equi {

enum class DeclKind { Bool, Int, Binary };

struct Decl {
  std::string name;
  DeclKind kind{};
  Lit lit;      // Bool
  UnaryInt num; // Int
  BinaryInt bin;
};

enum class ModelStatus { Open, UnsatAtCompileTime };

// The lowered constraint model: declarations, constraints, and the
// equivalence store that carries equi-propagation substitutions.
// Variable ids are allocated by a monotone counter, so compilation of a
// fixed input is reproducible byte for byte.
class Model {
public:
  EquivStore store;
  std::vector<Decl> decls;
  std::vector<Constraint> constraints;
  std::vector<std::string> groups; // group label registry

  ModelStatus status() const {
    return store.unsat() ? ModelStatus::UnsatAtCompileTime : ModelStatus::Open;
  }

  uint32_t num_vars() const { return next_var_ - 1; }

  Lit new_bool() {
    uint32_t v = next_var_++;
    store.ensure(v);
    return Lit::make(v);
  }

  UnaryInt new_unary(long long lo, long long hi) {
    if (lo > hi) fail("empty integer domain [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    if (hi - lo > 1000000) fail("domain too large for the unary order-encoding");
    std::vector<Lit> bits;
    bits.reserve(static_cast<size_t>(hi - lo));
    for (long long v = lo; v < hi; ++v) bits.push_back(new_bool());
    UnaryInt u(lo, std::move(bits));
    unaries.push_back(u);
    return u;
  }

  BinaryInt new_binary(int width) {
    std::vector<Lit> bits;
    bits.reserve(static_cast<size_t>(width));
    for (int i = 0; i < width; ++i) bits.push_back(new_bool());
    return BinaryInt(std::move(bits));
  }

  // Every unary created through the model, for monotonicity bookkeeping.
  std::vector<UnaryInt> unaries;

  int add(Constraint c) {
    c.id = static_cast<int>(constraints.size());
    constraints.push_back(std::move(c));
    return constraints.back().id;
  }

  int group_id(const std::string& name) {
    for (size_t i = 0; i < groups.size(); ++i)
      if (groups[i] == name) return static_cast<int>(i);
    groups.push_back(name);
    return static_cast<int>(groups.size()) - 1;
  }

  // ---- order-encoding bound updates (compile-time propagation) ----

  // Bind "x >= v" and the implied weaker thresholds. Returns true on change.
  bool assert_geq(const UnaryInt& u, long long v) {
    if (v <= u.lo()) return false; // vacuous
    bool changed = false;
    if (v > u.hi()) {
      // impossible: force the top threshold's negation to clash
      changed |= store.bind(Lit::t(), false);
      return changed;
    }
    for (long long t = v; t > u.lo(); --t) {
      Lit l = store.resolve(u.geq_lit(t));
      if (l.is_true()) break; // lower thresholds already implied
      changed |= store.bind(u.geq_lit(t), true);
    }
    return changed;
  }

  // Bind "x < v" (i.e. x <= v-1) and implied thresholds.
  bool assert_lt(const UnaryInt& u, long long v) {
    if (v > u.hi()) return false; // vacuous
    bool changed = false;
    if (v <= u.lo()) {
      changed |= store.bind(Lit::t(), false);
      return changed;
    }
    for (long long t = v; t <= u.hi(); ++t) {
      Lit l = store.resolve(u.geq_lit(t));
      if (l.is_false()) break;
      changed |= store.bind(u.geq_lit(t), false);
    }
    return changed;
  }

  bool fix_value(const UnaryInt& u, long long v) {
    bool c = assert_geq(u, v);
    c |= assert_lt(u, v + 1);
    return c;
  }

  // Remove a single value: equate neighbouring thresholds (sentinels at the
  // ends turn this into a bound assertion).
  bool remove_value(const UnaryInt& u, long long v) {
    if (v < u.lo() || v > u.hi()) return false; // not in domain
    return store.merge(u.geq_lit(v), u.geq_lit(v + 1));
  }

  // Current bounds under the store. Bits need not resolve monotonically in
  // transient states; scan for the strongest implied bound on each side.
  long long cur_lo(const UnaryInt& u) const {
    long long best = u.lo();
    for (long long v = u.hi(); v > u.lo(); --v)
      if (store.resolve(u.geq_lit(v)).is_true()) { best = v; break; }
    return best;
  }

  long long cur_hi(const UnaryInt& u) const {
    long long best = u.hi();
    for (long long v = u.lo() + 1; v <= u.hi(); ++v)
      if (store.resolve(u.geq_lit(v)).is_false()) { best = v - 1; break; }
    return best;
  }

  bool is_fixed(const UnaryInt& u, long long& value) const {
    long long lo = cur_lo(u), hi = cur_hi(u);
    if (lo == hi) { value = lo; return true; }
    return false;
  }

  // Is value v still possible? (distinct neighbouring threshold classes)
  bool value_possible(const UnaryInt& u, long long v) const {
    if (v < u.lo() || v > u.hi()) return false;
    Lit a = store.resolve(u.geq_lit(v));
    Lit b = store.resolve(u.geq_lit(v + 1));
    if (a.is_false()) return false;
    if (b.is_true()) return false;
    return a != b;
  }

private:
  uint32_t next_var_ = 1;
};

} // namespace equi
