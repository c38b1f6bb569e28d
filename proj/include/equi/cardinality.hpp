#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "equi/constraint.hpp"
#include "equi/model.hpp"

namespace equi {

enum class CardStrategy { Adder, Merger, Hybrid };

inline const char* card_name(CardStrategy s) {
  switch (s) {
    case CardStrategy::Adder: return "adder";
    case CardStrategy::Merger: return "merger";
    case CardStrategy::Hybrid: return "hybrid";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Cost model. A sum node int_plus(A,B,C) with |A|=m, |B|=p can expand as a
// direct unary adder (2(m+p+mp) clauses, no fresh variables) or as a
// Batcher odd-even merge (comparators over fresh odd/even intermediates).
// The hybrid expansion takes whichever is predicted smaller at each node and
// recurses only inside merge expansions.
// ---------------------------------------------------------------------------

struct MergeTop {
  int d_odd;  // |merge of odd subsequences|
  int d_even; // |merge of even subsequences|
  int n_comp; // comparators in the combine step
};

inline MergeTop merge_top(int m, int p) {
  int d_odd = (m + 1) / 2 + (p + 1) / 2;
  int d_even = m / 2 + p / 2;
  int n_comp = d_odd == d_even ? d_even - 1 : d_even;
  return {d_odd, d_even, n_comp};
}

inline long long adder_clauses(long long m, long long p) {
  return 2 * (m + p + m * p);
}

struct NetCost {
  long long clauses = 0;
  long long aux_vars = 0;
};

enum class NodeChoice { Pass, Adder, Merge };

struct PlanNode {
  int m = 0, p = 0;
  NodeChoice choice = NodeChoice::Pass;
  NetCost cost;             // of this whole subtree
  long long comparators = 0; // in this whole subtree
};

class CostTable {
public:
  explicit CostTable(int comparator_clauses = 6) : ccl_(comparator_clauses) {}

  // cost of the pure recursive merger expansion
  NetCost merger(int m, int p) {
    if (m > p) std::swap(m, p);
    if (m == 0) return {0, 0};
    if (m == 1 && p == 1) return {ccl_, 0};
    auto it = merger_memo_.find({m, p});
    if (it != merger_memo_.end()) return it->second;
    MergeTop t = merge_top(m, p);
    NetCost a = merger((m + 1) / 2, (p + 1) / 2);
    NetCost b = merger(m / 2, p / 2);
    NetCost r{a.clauses + b.clauses + static_cast<long long>(ccl_) * t.n_comp,
              a.aux_vars + b.aux_vars + t.d_odd + t.d_even};
    merger_memo_[{m, p}] = r;
    return r;
  }

  // Cost and root choice of the hybrid expansion. The decision at a node
  // compares the direct adder against the full merger decomposition and
  // recurses only when the merger is strictly smaller; so the expansion is a
  // merger whose base cases are unary adders.
  PlanNode hybrid(int m, int p) {
    if (m > p) std::swap(m, p);
    PlanNode n;
    n.m = m;
    n.p = p;
    if (m == 0) return n;
    auto it = hybrid_memo_.find({m, p});
    if (it != hybrid_memo_.end()) return it->second;
    long long ad = adder_clauses(m, p);
    if (m == 1 && p == 1) {
      n.choice = NodeChoice::Adder; // tie with a single comparator
      n.cost = {ad, 0};
    } else if (merger(m, p).clauses < ad) {
      MergeTop t = merge_top(m, p);
      PlanNode a = hybrid((m + 1) / 2, (p + 1) / 2);
      PlanNode b = hybrid(m / 2, p / 2);
      n.choice = NodeChoice::Merge;
      n.cost = {a.cost.clauses + b.cost.clauses + static_cast<long long>(ccl_) * t.n_comp,
                a.cost.aux_vars + b.cost.aux_vars + t.d_odd + t.d_even};
      n.comparators = a.comparators + b.comparators + t.n_comp;
    } else {
      n.choice = NodeChoice::Adder;
      n.cost = {ad, 0};
    }
    hybrid_memo_[{m, p}] = n;
    return n;
  }

  // expansion choice at one node under a strategy
  NodeChoice choose(CardStrategy s, int m, int p) {
    if (m > p) std::swap(m, p);
    if (m == 0) return NodeChoice::Pass;
    switch (s) {
      case CardStrategy::Adder: return NodeChoice::Adder;
      case CardStrategy::Merger: return m == 1 && p == 1 ? NodeChoice::Adder : NodeChoice::Merge;
      case CardStrategy::Hybrid: return hybrid(m, p).choice;
    }
    return NodeChoice::Adder;
  }

  NetCost cost_of(CardStrategy s, int m, int p) {
    if (m > p) std::swap(m, p);
    if (m == 0) return {0, 0};
    switch (s) {
      case CardStrategy::Adder: return {adder_clauses(m, p), 0};
      case CardStrategy::Merger:
        if (m == 1 && p == 1) return {adder_clauses(1, 1), 0};
        return merger(m, p);
      case CardStrategy::Hybrid: return hybrid(m, p).cost;
    }
    return {0, 0};
  }

private:
  int ccl_;
  std::map<std::pair<int, int>, NetCost> merger_memo_;
  std::map<std::pair<int, int>, PlanNode> hybrid_memo_;
};

// ---------------------------------------------------------------------------
// Network construction. These run inside the simplification fixpoint: they
// perform unions directly on the model store and return fresh constraints
// (comparators and smaller int_plus nodes) for the worklist.
// ---------------------------------------------------------------------------

namespace card {

inline Constraint mk_comparator(Lit a, Lit b, Lit o1, Lit o2, bool relax) {
  Constraint c;
  c.kind = Kind::Comparator;
  c.x = {a, b, o1, o2};
  c.relax = relax;
  return c;
}

inline Constraint mk_int_plus(UnaryInt a, UnaryInt b, UnaryInt z, bool relax) {
  Constraint c;
  c.kind = Kind::IntPlus;
  c.I = {std::move(a), std::move(b), std::move(z)};
  c.relax = relax;
  return c;
}

// Batcher odd-even merge of two sorted literal vectors onto output slots c.
// |c| must equal |a| + |b|. Pass-throughs are unions on the store; each
// combine step emits one comparator. Sub-merges follow the strategy:
// Adder-chosen nodes remain int_plus constraints for direct encoding.
// force_merge expands the top node as a merge unconditionally (used when the
// caller already decided this node's expansion).
inline void merge_network(Model& m, CostTable& costs, CardStrategy strat,
                          const std::vector<Lit>& a, const std::vector<Lit>& b,
                          const std::vector<Lit>& c, bool relax, bool force_merge,
                          std::vector<Constraint>& out) {
  int ma = static_cast<int>(a.size()), pb = static_cast<int>(b.size());
  if (ma == 0 || pb == 0) {
    const std::vector<Lit>& src = ma == 0 ? b : a;
    for (size_t i = 0; i < src.size(); ++i) m.store.merge(c[i], src[i]);
    return;
  }
  if (ma == 1 && pb == 1) {
    out.push_back(mk_comparator(a[0], b[0], c[0], c[1], relax));
    return;
  }
  if (!force_merge && costs.choose(strat, ma, pb) == NodeChoice::Adder) {
    out.push_back(mk_int_plus(UnaryInt(0, a), UnaryInt(0, b), UnaryInt(0, c), relax));
    return;
  }
  auto split = [](const std::vector<Lit>& v, bool odd) {
    std::vector<Lit> r;
    for (size_t i = odd ? 0 : 1; i < v.size(); i += 2) r.push_back(v[i]);
    return r;
  };
  MergeTop t = merge_top(ma, pb);
  std::vector<Lit> co, ce;
  for (int i = 0; i < t.d_odd; ++i) co.push_back(m.new_bool());
  for (int i = 0; i < t.d_even; ++i) ce.push_back(m.new_bool());
  merge_network(m, costs, strat, split(a, true), split(b, true), co, relax, false, out);
  merge_network(m, costs, strat, split(a, false), split(b, false), ce, relax, false, out);
  // combine: c1 = co1; pairs sort(co[i+1], ce[i]); parity-dependent tail
  m.store.merge(c[0], co[0]);
  for (int i = 1; i <= t.n_comp; ++i)
    out.push_back(mk_comparator(co[i], ce[i - 1], c[2 * i - 1], c[2 * i], relax));
  if (t.d_odd == t.d_even) m.store.merge(c.back(), ce.back());
  if (t.d_odd == t.d_even + 2) m.store.merge(c.back(), co.back());
}

// Expand one int_plus node as a merge network over value-aligned slots.
inline void expand_int_plus_merge(Model& m, CostTable& costs, CardStrategy strat,
                                  const UnaryInt& x, const UnaryInt& y, const UnaryInt& z,
                                  bool relax, std::vector<Constraint>& out) {
  std::vector<Lit> c;
  long long base = x.lo() + y.lo();
  for (int t = 1; t <= x.width() + y.width(); ++t) c.push_back(z.geq_lit(base + t));
  merge_network(m, costs, strat, x.bits(), y.bits(), c, relax, true, out);
}

// Divide-and-conquer sum of literals onto the thresholds of y, with
// intermediate widths capped (cap <= 0 means uncapped). Base cases unify or
// emit one comparator; the general case introduces two halves and int_plus.
inline void sum_eq(Model& m, const std::vector<Lit>& as, const UnaryInt& y, long long cap,
                   bool relax, std::vector<Constraint>& out) {
  long long n = static_cast<long long>(as.size());
  m.assert_geq(y, 0);
  m.assert_lt(y, n + 1);
  if (m.store.unsat()) return;
  if (n == 0) return;
  if (n == 1) {
    m.store.merge(y.geq_lit(1), as[0]);
    return;
  }
  if (n == 2) {
    out.push_back(mk_comparator(as[0], as[1], y.geq_lit(1), y.geq_lit(2), relax));
    return;
  }
  long long n1 = (n + 1) / 2, n2 = n - n1;
  long long w1 = cap > 0 ? std::min(n1, cap) : n1;
  long long w2 = cap > 0 ? std::min(n2, cap) : n2;
  UnaryInt t1 = m.new_unary(0, w1);
  UnaryInt t2 = m.new_unary(0, w2);
  std::vector<Lit> as1(as.begin(), as.begin() + n1), as2(as.begin() + n1, as.end());
  sum_eq(m, as1, t1, cap, relax, out);
  sum_eq(m, as2, t2, cap, relax, out);
  out.push_back(mk_int_plus(t1, t2, y, relax));
}

// bool_array_sum_leq(as, k): T3 in [0,k] with int_plus(T3,T2,k) holding
// T3 = k - T2 by equi-propagation (zero clauses), plus int_leq(T1,T3).
inline void sum_leq(Model& m, const std::vector<Lit>& as, long long k,
                    std::vector<Constraint>& out) {
  long long n = static_cast<long long>(as.size());
  if (k < 0) {
    m.store.bind(Lit::t(), false);
    return;
  }
  if (k >= n) return; // tautology
  if (k == 0) {
    for (Lit l : as) m.store.bind(l, false);
    return;
  }
  long long n1 = (n + 1) / 2, n2 = n - n1;
  UnaryInt t3 = m.new_unary(0, k);
  UnaryInt t1 = m.new_unary(0, std::min(n1, k));
  UnaryInt t2 = m.new_unary(0, std::min(n2, k));
  std::vector<Lit> as1(as.begin(), as.begin() + n1), as2(as.begin() + n1, as.end());
  sum_eq(m, as1, t1, k, true, out);
  sum_eq(m, as2, t2, k, true, out);
  out.push_back(mk_int_plus(t3, t2, UnaryInt::constant(k), true));
  Constraint leq;
  leq.kind = Kind::IntLeq;
  leq.I = {t1, t3};
  leq.relax = true;
  out.push_back(std::move(leq));
}

} // namespace card
} // namespace equi
