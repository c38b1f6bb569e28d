#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "equi/literal.hpp"

namespace equi {

// Polarity-aware union-find over variable ids. Each variable carries a sign
// relative to its parent; var 0 is the constant class (root value = true) and
// is pinned as a root, so binding a literal to a constant is just a union
// with var 0. Merging a class with its own negation marks the store unsat.
class EquivStore {
public:
  EquivStore() { ensure(0); }

  void ensure(uint32_t var) {
    while (parent_.size() <= var) {
      parent_.push_back(static_cast<uint32_t>(parent_.size()));
      sign_.push_back(0);
      rank_.push_back(0);
    }
    rank_[0] = 0x7fffffff; // keep the constant class rooted at 0
  }

  uint32_t num_vars() const { return static_cast<uint32_t>(parent_.size()); }
  bool unsat() const { return unsat_; }
  uint64_t version() const { return version_; }

  // Called with the root of the class absorbed by a union.
  std::function<void(uint32_t)> on_absorb;

  // Canonical literal for l: the class representative with accumulated sign.
  Lit resolve(Lit l) const {
    if (l.is_const()) return l;
    if (l.var() >= parent_.size()) return l;
    auto [root, sgn] = find(l.var());
    bool neg = l.negated() ^ sgn;
    if (root == 0) return neg ? Lit::f() : Lit::t();
    return Lit::make(root, neg);
  }

  bool same_class(Lit a, Lit b) const { return resolve(a) == resolve(b); }

  // Assert a == b. Returns true if the store changed.
  bool merge(Lit a, Lit b) {
    a = resolve(a);
    b = resolve(b);
    if (a == b) return false;
    if (a == ~b) {
      unsat_ = true;
      ++version_;
      return true;
    }
    // Both resolved: at most one is a constant (T==F was caught above).
    uint32_t ra = a.is_const() ? 0 : a.var();
    uint32_t rb = b.is_const() ? 0 : b.var();
    bool sa = a.is_const() ? a.is_false() : a.negated();
    bool sb = b.is_const() ? b.is_false() : b.negated();
    bool rel = sa ^ sb; // invariant: value(ra) == value(rb) xor rel
    if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    parent_[rb] = ra;
    sign_[rb] = rel ? 1 : 0;
    ++version_;
    if (on_absorb) on_absorb(rb);
    return true;
  }

  bool bind(Lit l, bool value) { return merge(l, value ? Lit::t() : Lit::f()); }

  // (root, sign of var relative to root), with path compression.
  std::pair<uint32_t, bool> find(uint32_t var) const {
    uint32_t root = var;
    bool sgn = false; // sign var -> root
    while (parent_[root] != root) {
      sgn ^= sign_[root] != 0;
      root = parent_[root];
    }
    uint32_t u = var;
    bool s = false; // sign var -> u
    while (u != root) {
      uint32_t next = parent_[u];
      bool step = sign_[u] != 0;
      parent_[u] = root;
      sign_[u] = (sgn ^ s) ? 1 : 0; // sign u -> root
      s ^= step;
      u = next;
    }
    return {root, sgn};
  }

private:
  mutable std::vector<uint32_t> parent_;
  mutable std::vector<uint8_t> sign_;
  std::vector<uint32_t> rank_;
  bool unsat_ = false;
  uint64_t version_ = 0;
};

} // namespace equi
