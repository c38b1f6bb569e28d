#pragma once

#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "equi/binary_ext.hpp"
#include "equi/cardinality.hpp"
#include "equi/constraint.hpp"
#include "equi/model.hpp"

namespace equi {

struct Options {
  CardStrategy card = CardStrategy::Hybrid;
  bool onesided_comparators = false;
  bool xor_mode = false;
  bool annotate = false;
  bool trace = false;
  bool solver_restarts = false;
  std::vector<std::string> cep_groups;
};

struct SimplifyResult {
  uint64_t firings = 0;
  std::vector<std::string> trace;
};

// Phase 2 of compilation: a worklist fixpoint applying equi-propagation,
// partial evaluation, and decomposition until no rule fires. A constraint is
// re-queued whenever a literal it mentions changes equivalence class.
class Simplifier {
public:
  Simplifier(Model& m, const Options& opts) : m_(m), opts_(opts), costs_(6) {}

  SimplifyResult run() {
    struct CallbackGuard {
      EquivStore& store;
      ~CallbackGuard() { store.on_absorb = nullptr; }
    } guard{m_.store};
    inq_.assign(m_.constraints.size(), 0);
    incidence_.clear();
    incidence_.resize(m_.store.num_vars() + 1);
    for (const auto& c : m_.constraints)
      if (c.alive) register_constraint(c.id);
    for (const auto& c : m_.constraints)
      if (c.alive) enqueue(c.id);

    m_.store.on_absorb = [this](uint32_t absorbed_root) {
      if (absorbed_root >= incidence_.size()) return;
      std::vector<int> moved = std::move(incidence_[absorbed_root]);
      incidence_[absorbed_root].clear();
      for (int idx : moved) enqueue(idx);
      auto [root, sgn] = m_.store.find(absorbed_root);
      (void)sgn;
      if (root != absorbed_root) {
        grow_incidence(root);
        auto& dst = incidence_[root];
        dst.insert(dst.end(), moved.begin(), moved.end());
      }
    };

    while (!queue_.empty() && !m_.store.unsat()) {
      int idx = queue_.front();
      queue_.pop_front();
      inq_[idx] = 0;
      if (!m_.constraints[idx].alive) continue;
      process(idx);
    }
    SimplifyResult r{firings_, std::move(trace_)};
    trace_.clear();
    firings_ = 0;
    return r;
  }

private:
  Model& m_;
  const Options& opts_;
  CostTable costs_;
  std::deque<int> queue_;
  std::vector<char> inq_;
  std::vector<std::vector<int>> incidence_; // root var -> constraint ids
  uint64_t firings_ = 0;
  std::vector<std::string> trace_;

  void grow_incidence(uint32_t v) {
    if (incidence_.size() <= v) incidence_.resize(v + 1);
  }

  void enqueue(int idx) {
    if (idx >= static_cast<int>(inq_.size())) inq_.resize(idx + 1, 0);
    if (inq_[idx] || !m_.constraints[idx].alive) return;
    inq_[idx] = 1;
    queue_.push_back(idx);
  }

  void for_each_var(const Constraint& c, const std::function<void(uint32_t)>& f) {
    auto lit = [&](Lit l) {
      if (l.is_var()) f(l.var());
    };
    for (const auto& arr : c.L)
      for (Lit l : arr) lit(l);
    for (Lit l : c.x) lit(l);
    for (const auto& u : c.I)
      for (Lit l : u.bits()) lit(l);
    for (const auto& b : c.B)
      for (Lit l : b.bits()) lit(l);
  }

  void register_constraint(int idx) {
    // register under current roots; duplicates are harmless
    std::vector<uint32_t> seen;
    for_each_var(m_.constraints[idx], [&](uint32_t v) {
      auto [root, sgn] = m_.store.find(v);
      (void)sgn;
      if (root == 0) return;
      for (uint32_t s : seen)
        if (s == root) return;
      seen.push_back(root);
      grow_incidence(root);
      incidence_[root].push_back(idx);
    });
  }

  void fire(int idx, const char* rule, const std::string& effect) {
    ++firings_;
    if (opts_.trace)
      trace_.push_back(std::string(rule) + " #" + std::to_string(idx) + " " + effect);
  }

  void del(int idx, const char* rule, const char* why) {
    m_.constraints[idx].alive = false;
    fire(idx, rule, std::string("deleted (") + why + ")");
  }

  void replace(int idx, std::vector<Constraint> children, const char* rule) {
    m_.constraints[idx].alive = false;
    int parent_group = m_.constraints[idx].group;
    bool parent_relax = m_.constraints[idx].relax;
    int n = 0;
    for (auto& ch : children) {
      ch.parent = idx;
      if (ch.group < 0) ch.group = parent_group;
      ch.relax = ch.relax || parent_relax;
      int cid = m_.add(std::move(ch));
      inq_.resize(m_.constraints.size(), 0);
      register_constraint(cid);
      enqueue(cid);
      ++n;
    }
    fire(idx, rule, "decomposed into " + std::to_string(n));
  }

  Lit res(Lit l) const { return m_.store.resolve(l); }

  // ---- dispatcher ----

  void process(int idx) {
    switch (m_.constraints[idx].kind) {
      case Kind::BoolEq: return ep_bool_eq(idx);
      case Kind::BoolArrayOp: return ep_bool_array_op(idx);
      case Kind::BoolArrayOpReif: return ep_bool_array_op_reif(idx);
      case Kind::Comparator: return ep_comparator(idx);
      case Kind::IntEq: return ep_int_eq(idx);
      case Kind::IntNeq: return ep_int_neq(idx);
      case Kind::IntLeq: return ep_int_leq(idx);
      case Kind::IntLeqReif: return ep_int_leq_reif(idx);
      case Kind::IntEqReif: return ep_int_eq_reif(idx);
      case Kind::IntPlus: return ep_int_plus(idx);
      case Kind::IntTimes: return ep_int_times(idx);
      case Kind::IntDiv: return decomp_div_mod(idx, true);
      case Kind::IntMod: return decomp_div_mod(idx, false);
      case Kind::IntMax: return decomp_min_max(idx, true);
      case Kind::IntMin: return decomp_min_max(idx, false);
      case Kind::IntAbs: return decomp_abs(idx);
      case Kind::IntArrayAllDiff: return decomp_alldiff(idx);
      case Kind::IntArrayOp: return decomp_int_array_op(idx);
      case Kind::IntArraySumRel: return decomp_int_array_sum_rel(idx);
      case Kind::IntArrayLinRel: return decomp_int_array_lin_rel(idx);
      case Kind::IntArraySumModK: return decomp_sum_modk(idx, false);
      case Kind::BoolArraySumModK: return decomp_sum_modk(idx, true);
      case Kind::BoolArraySumRel: return decomp_bool_array_sum_rel(idx);
      case Kind::BoolArrayPbRel: return decomp_pb(idx);
      case Kind::BoolArraysLex: return decomp_bool_lex(idx);
      case Kind::BoolArraysLexReif: return decomp_bool_lex_reif(idx);
      case Kind::IntArraysLex: return decomp_int_lex(idx);
      case Kind::BinArraySumEq: return decomp_bin_sum(idx);
      case Kind::BinTimes: return decomp_bin_times(idx);
      case Kind::BinSquare: return decomp_bin_square(idx);
      case Kind::Int2Binary: return decomp_int2binary(idx);
    }
  }

  // ---- Boolean rules ----

  void ep_bool_eq(int idx) {
    auto& c = m_.constraints[idx];
    m_.store.merge(c.x[0], c.x[1]);
    del(idx, "bool_eq", "unified");
  }

  // Partially evaluate an or/and/xor member list. Returns the compacted
  // member list; `decided` reports a constant outcome, `parity_flip` counts
  // folded xor constants and cancelled complement pairs.
  struct FoldedList {
    std::vector<Lit> ms;
    bool decided = false;
    bool value = false;
    bool parity_flip = false;
  };

  FoldedList fold_or_and(const std::vector<Lit>& in, bool is_or) {
    FoldedList f;
    for (Lit l0 : in) {
      Lit l = res(l0);
      if (l.is_const()) {
        if (l.is_true() == is_or) {
          f.decided = true;
          f.value = is_or;
          return f;
        }
        continue; // neutral element
      }
      bool dup = false;
      for (Lit k : f.ms) {
        if (k == l) { dup = true; break; }
        if (k == ~l) {
          f.decided = true;
          f.value = is_or; // x op ~x decides or=true / and=false
          return f;
        }
      }
      if (!dup) f.ms.push_back(l);
    }
    return f;
  }

  FoldedList fold_xor(const std::vector<Lit>& in) {
    FoldedList f;
    for (Lit l0 : in) {
      Lit l = res(l0);
      if (l.is_const()) {
        if (l.is_true()) f.parity_flip = !f.parity_flip;
        continue;
      }
      bool cancelled = false;
      for (size_t i = 0; i < f.ms.size(); ++i) {
        if (f.ms[i] == l) { // x ^ x = 0
          f.ms.erase(f.ms.begin() + static_cast<long>(i));
          cancelled = true;
          break;
        }
        if (f.ms[i] == ~l) { // x ^ ~x = 1
          f.ms.erase(f.ms.begin() + static_cast<long>(i));
          f.parity_flip = !f.parity_flip;
          cancelled = true;
          break;
        }
      }
      if (!cancelled) f.ms.push_back(l);
    }
    return f;
  }

  void ep_bool_array_op(int idx) {
    auto& c = m_.constraints[idx];
    if (c.bop == BOp::Or || c.bop == BOp::And) {
      bool is_or = c.bop == BOp::Or;
      FoldedList f = fold_or_and(c.L[0], is_or);
      if (f.decided) {
        if (f.value) del(idx, "bool_array_op", "satisfied");
        else { m_.store.bind(Lit::t(), false); del(idx, "bool_array_op", "violated"); }
        return;
      }
      if (!is_or) { // conjunction: bind every member
        for (Lit l : f.ms) m_.store.bind(l, true);
        del(idx, "bool_array_and", "all bound");
        return;
      }
      if (f.ms.empty()) {
        m_.store.bind(Lit::t(), false);
        del(idx, "bool_array_or", "empty disjunction");
        return;
      }
      if (f.ms.size() == 1) {
        m_.store.bind(f.ms[0], true);
        del(idx, "bool_array_or", "unit");
        return;
      }
      if (f.ms != c.L[0]) {
        c.L[0] = std::move(f.ms);
        fire(idx, "bool_array_or", "compacted");
      }
      return;
    }
    // xor (iff was normalized to xor at lowering): assert parity(list) = 1
    FoldedList f = fold_xor(c.L[0]);
    bool target = !f.parity_flip; // xor(rest) must equal this
    if (f.ms.empty()) {
      if (target) m_.store.bind(Lit::t(), false);
      del(idx, "bool_array_xor", target ? "violated" : "satisfied");
      return;
    }
    if (f.ms.size() == 1) {
      m_.store.bind(f.ms[0], target);
      del(idx, "bool_array_xor", "unit");
      return;
    }
    if (f.ms.size() == 2) {
      m_.store.merge(f.ms[0], target ? ~f.ms[1] : f.ms[1]);
      del(idx, "bool_array_xor", "pairwise union");
      return;
    }
    if (!target) f.ms[0] = ~f.ms[0]; // canonical: xor(list) = true
    if (f.ms != c.L[0]) {
      c.L[0] = std::move(f.ms);
      fire(idx, "bool_array_xor", "compacted");
    }
  }

  void ep_bool_array_op_reif(int idx) {
    auto& c = m_.constraints[idx];
    Lit r = res(c.x[0]);
    if (c.bop == BOp::Or || c.bop == BOp::And) {
      bool is_or = c.bop == BOp::Or;
      FoldedList f = fold_or_and(c.L[0], is_or);
      if (f.decided) {
        m_.store.bind(r, f.value);
        del(idx, "bool_reif", "operand decided");
        return;
      }
      if (f.ms.empty()) { // neutral: or=false, and=true
        m_.store.bind(r, !is_or);
        del(idx, "bool_reif", "empty");
        return;
      }
      if (f.ms.size() == 1) {
        m_.store.merge(r, f.ms[0]);
        del(idx, "bool_reif", "unit alias");
        return;
      }
      if (r.is_const()) {
        // r=true: assert the op; r=false: assert the negation
        Constraint plain;
        plain.kind = Kind::BoolArrayOp;
        if (r.is_true() == is_or) {
          plain.bop = BOp::Or;
          plain.L = {f.ms};
          if (!r.is_true())
            for (auto& l : plain.L[0]) l = ~l; // ~and(ms) = or(~ms)
        } else {
          plain.bop = BOp::And;
          plain.L = {f.ms};
          if (r.is_false())
            for (auto& l : plain.L[0]) l = ~l; // ~or(ms) = and(~ms)
        }
        replace(idx, {std::move(plain)}, "bool_reif_const");
        return;
      }
      // member absorption: r occurring among the members collapses the
      // equivalence to implications
      for (size_t i = 0; i < f.ms.size(); ++i) {
        if (f.ms[i] == r) {
          std::vector<Constraint> imps;
          for (size_t j = 0; j < f.ms.size(); ++j) {
            if (j == i) continue;
            imps.push_back(is_or ? binext::mk_or({~f.ms[j], r})
                                 : binext::mk_or({~r, f.ms[j]}));
          }
          replace(idx, std::move(imps), "bool_reif_absorb");
          return;
        }
        if (f.ms[i] == ~r) {
          // and: r <-> ~r & rest forces r=false, then rest may not all hold
          // or:  r <-> ~r | rest forces r=true, then rest must hold
          m_.store.bind(r, is_or);
          std::vector<Lit> rest;
          for (size_t j = 0; j < f.ms.size(); ++j)
            if (j != i) rest.push_back(is_or ? f.ms[j] : ~f.ms[j]);
          replace(idx, {binext::mk_or(std::move(rest))}, "bool_reif_absorb");
          return;
        }
      }
      if (f.ms != c.L[0] || r != c.x[0]) {
        c.L[0] = std::move(f.ms);
        c.x[0] = r;
        fire(idx, "bool_reif", "compacted");
      }
      return;
    }
    // xor-reif: r <-> parity(list)=1; fold r into the list as ~r and treat
    // as a plain xor constraint
    FoldedList f = fold_xor(c.L[0]);
    Lit radj = f.parity_flip ? ~r : r; // radj <-> parity(ms)=1
    if (f.ms.empty()) {
      m_.store.bind(radj, false);
      del(idx, "bool_xor_reif", "empty");
      return;
    }
    if (f.ms.size() == 1) {
      m_.store.merge(radj, f.ms[0]);
      del(idx, "bool_xor_reif", "unit alias");
      return;
    }
    Constraint plain;
    plain.kind = Kind::BoolArrayOp;
    plain.bop = BOp::Xor;
    plain.L = {f.ms};
    plain.L[0].push_back(~radj); // parity(ms + ~radj) = 1
    replace(idx, {std::move(plain)}, "bool_xor_reif");
  }

  void ep_comparator(int idx) {
    auto& c = m_.constraints[idx];
    Lit a = res(c.x[0]), b = res(c.x[1]), o1 = res(c.x[2]), o2 = res(c.x[3]);
    auto finish = [&](Lit v1, Lit v2, const char* why) {
      m_.store.merge(o1, v1);
      m_.store.merge(o2, v2);
      del(idx, "comparator", why);
    };
    if (a.is_true()) return finish(Lit::t(), b, "input true");
    if (a.is_false()) return finish(b, Lit::f(), "input false");
    if (b.is_true()) return finish(Lit::t(), a, "input true");
    if (b.is_false()) return finish(a, Lit::f(), "input false");
    if (a == b) return finish(a, a, "equal inputs");
    if (a == ~b) return finish(Lit::t(), Lit::f(), "complementary inputs");
    if (o1.is_false()) {
      m_.store.bind(a, false);
      m_.store.bind(b, false);
      m_.store.bind(o2, false);
      del(idx, "comparator", "or-output false");
      return;
    }
    if (o2.is_true()) {
      m_.store.bind(a, true);
      m_.store.bind(b, true);
      m_.store.bind(o1, true);
      del(idx, "comparator", "and-output true");
      return;
    }
    if (o1.is_true() && o2.is_false()) {
      m_.store.merge(a, ~b);
      del(idx, "comparator", "exactly-one outputs");
      return;
    }
    if (a != c.x[0] || b != c.x[1] || o1 != c.x[2] || o2 != c.x[3]) {
      c.x = {a, b, o1, o2};
      // plain resolution refresh, not counted as a firing
    }
  }

  // ---- integer relations ----

  void ep_int_eq(int idx) {
    auto& c = m_.constraints[idx];
    const UnaryInt &x = c.I[0], &y = c.I[1];
    long long lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
    for (long long v = lo + 1; v <= hi && !m_.store.unsat(); ++v)
      m_.store.merge(x.geq_lit(v), y.geq_lit(v));
    del(idx, "int_eq", "bitwise unions");
  }

  void ep_int_neq(int idx) {
    auto& c = m_.constraints[idx];
    const UnaryInt &x = c.I[0], &y = c.I[1];
    long long xl = m_.cur_lo(x), xh = m_.cur_hi(x);
    long long yl = m_.cur_lo(y), yh = m_.cur_hi(y);
    if (xh < yl || yh < xl) {
      del(idx, "int_neq", "disjoint ranges");
      return;
    }
    if (xl == xh) {
      m_.remove_value(y, xl);
      del(idx, "int_neq", "left fixed");
      return;
    }
    if (yl == yh) {
      m_.remove_value(x, yl);
      del(idx, "int_neq", "right fixed");
      return;
    }
  }

  void ep_int_leq(int idx) {
    auto& c = m_.constraints[idx];
    const UnaryInt &x = c.I[0], &y = c.I[1];
    bool ch = m_.assert_geq(y, m_.cur_lo(x));
    ch |= m_.assert_lt(x, m_.cur_hi(y) + 1);
    if (m_.store.unsat()) return;
    if (ch) fire(idx, "int_leq", "bounds");
    if (m_.cur_hi(x) <= m_.cur_lo(y)) {
      del(idx, "int_leq", "entailed");
      return;
    }
  }

  void ep_int_leq_reif(int idx) {
    auto& c = m_.constraints[idx];
    const UnaryInt &x = c.I[0], &y = c.I[1];
    Lit r = res(c.x[0]);
    long long xl = m_.cur_lo(x), xh = m_.cur_hi(x);
    long long yl = m_.cur_lo(y), yh = m_.cur_hi(y);
    if (xh <= yl) {
      m_.store.bind(r, true);
      del(idx, "int_leq_reif", "entailed");
      return;
    }
    if (xl > yh) {
      m_.store.bind(r, false);
      del(idx, "int_leq_reif", "refuted");
      return;
    }
    if (r.is_true()) {
      Constraint leq;
      leq.kind = Kind::IntLeq;
      leq.I = {x, y};
      replace(idx, {std::move(leq)}, "int_leq_reif");
      return;
    }
    if (r.is_false()) {
      Constraint gt; // ~(x<=y)  ==  y+1 <= x
      gt.kind = Kind::IntLeq;
      gt.I = {y.shifted(1), x};
      replace(idx, {std::move(gt)}, "int_leq_reif");
      return;
    }
    if (xl == xh) { // r <-> y >= xl
      m_.store.merge(r, y.geq_lit(xl));
      del(idx, "int_leq_reif", "left fixed, threshold alias");
      return;
    }
    if (yl == yh) { // r <-> x <= yl  ==  ~(x >= yl+1)
      m_.store.merge(r, ~x.geq_lit(yl + 1));
      del(idx, "int_leq_reif", "right fixed, threshold alias");
      return;
    }
  }

  void ep_int_eq_reif(int idx) {
    auto& c = m_.constraints[idx];
    const UnaryInt &x = c.I[0], &y = c.I[1];
    Lit r = res(c.x[0]);
    long long xl = m_.cur_lo(x), xh = m_.cur_hi(x);
    long long yl = m_.cur_lo(y), yh = m_.cur_hi(y);
    if (xh < yl || yh < xl) {
      m_.store.bind(r, false);
      del(idx, "int_eq_reif", "disjoint ranges");
      return;
    }
    if (xl == xh && yl == yh) {
      m_.store.bind(r, xl == yl);
      del(idx, "int_eq_reif", "both fixed");
      return;
    }
    if (r.is_true()) {
      Constraint eq;
      eq.kind = Kind::IntEq;
      eq.I = {x, y};
      replace(idx, {std::move(eq)}, "int_eq_reif");
      return;
    }
    if (r.is_false()) {
      Constraint ne;
      ne.kind = Kind::IntNeq;
      ne.I = {x, y};
      replace(idx, {std::move(ne)}, "int_eq_reif");
      return;
    }
    auto fixed_case = [&](const UnaryInt& fixed, long long a, const UnaryInt& other,
                          long long olo, long long ohi) {
      (void)fixed;
      if (a == olo) { // r <-> ~(other >= a+1)
        m_.store.merge(r, ~other.geq_lit(a + 1));
        del(idx, "int_eq_reif", "edge threshold alias");
        return true;
      }
      if (a == ohi) {
        m_.store.merge(r, other.geq_lit(a));
        del(idx, "int_eq_reif", "edge threshold alias");
        return true;
      }
      Constraint def;
      def.kind = Kind::BoolArrayOpReif;
      def.bop = BOp::And;
      def.L = {{other.geq_lit(a), ~other.geq_lit(a + 1)}};
      def.x = {r};
      replace(idx, {std::move(def)}, "int_eq_reif_value");
      return true;
    };
    if (xl == xh) { fixed_case(x, xl, y, yl, yh); return; }
    if (yl == yh) { fixed_case(y, yl, x, xl, xh); return; }
    // general: r <-> (x<=y) & (y<=x)
    Lit r1 = m_.new_bool(), r2 = m_.new_bool();
    Constraint c1;
    c1.kind = Kind::IntLeqReif;
    c1.I = {x, y};
    c1.x = {r1};
    Constraint c2;
    c2.kind = Kind::IntLeqReif;
    c2.I = {y, x};
    c2.x = {r2};
    Constraint both;
    both.kind = Kind::BoolArrayOpReif;
    both.bop = BOp::And;
    both.L = {{r1, r2}};
    both.x = {r};
    std::vector<Constraint> out;
    out.push_back(std::move(c1));
    out.push_back(std::move(c2));
    out.push_back(std::move(both));
    replace(idx, std::move(out), "int_eq_reif_split");
  }

  // ---- int_plus: the ad-hoc rule family ----

  void ep_int_plus(int idx) {
    auto& c = m_.constraints[idx];
    const UnaryInt &x = c.I[0], &y = c.I[1], &z = c.I[2];
    long long xl = m_.cur_lo(x), xh = m_.cur_hi(x);
    long long yl = m_.cur_lo(y), yh = m_.cur_hi(y);
    long long zl = m_.cur_lo(z), zh = m_.cur_hi(z);
    bool ch = false;
    ch |= m_.assert_geq(z, xl + yl);           // X>=i, Y>=j -> Z>=i+j
    ch |= m_.assert_lt(z, xh + yh + 1);        // X<i, Y<j -> Z<i+j-1
    ch |= m_.assert_geq(x, zl - yh);           // Z>=k, Y<j -> X>=k-j+1
    ch |= m_.assert_lt(x, zh - yl + 1);        // Z<k, Y>=j -> X<k-j
    ch |= m_.assert_geq(y, zl - xh);
    ch |= m_.assert_lt(y, zh - xl + 1);
    if (m_.store.unsat()) return;
    if (ch) {
      fire(idx, "int_plus", "bounds");
      enqueue(idx);
      return;
    }
    xl = m_.cur_lo(x); xh = m_.cur_hi(x);
    yl = m_.cur_lo(y); yh = m_.cur_hi(y);
    zl = m_.cur_lo(z); zh = m_.cur_hi(z);

    if (xl == xh) { // X=i: z_{i+t} = y_t
      for (long long v = std::min(zl, yl + xl) + 1; v <= std::max(zh, yh + xl); ++v)
        m_.store.merge(z.geq_lit(v), y.geq_lit(v - xl));
      del(idx, "int_plus", "left fixed");
      return;
    }
    if (yl == yh) {
      for (long long v = std::min(zl, xl + yl) + 1; v <= std::max(zh, xh + yl); ++v)
        m_.store.merge(z.geq_lit(v), x.geq_lit(v - yl));
      del(idx, "int_plus", "right fixed");
      return;
    }
    if (zl == zh) { // Z=k: x_t = ~y_{k+1-t}
      long long k = zl;
      for (long long v = std::min(xl, k - yh) + 1; v <= std::max(xh, k - yl); ++v)
        m_.store.merge(x.geq_lit(v), ~y.geq_lit(k - v + 1));
      del(idx, "int_plus", "sum fixed");
      return;
    }

    // stable under the ad-hoc rules: expand per strategy
    if (opts_.card != CardStrategy::Adder) {
      int mw = x.width(), pw = y.width();
      if (costs_.choose(opts_.card, mw, pw) == NodeChoice::Merge) {
        std::vector<Constraint> out;
        card::expand_int_plus_merge(m_, costs_, opts_.card, x, y, z, c.relax, out);
        replace(idx, std::move(out), "int_plus_merge");
        return;
      }
    }
  }

  // ---- times / div / mod / min / max / abs ----

  static Lit scaled_geq(const UnaryInt& y, long long a, long long v) {
    // literal for a*y >= v
    if (a == 0) return v <= 0 ? Lit::t() : Lit::f();
    if (a > 0) return y.geq_lit(UnaryInt::ceildiv(v, a));
    return ~y.geq_lit(UnaryInt::floordiv(v, a) + 1);
  }

  void ep_int_times(int idx) {
    auto& c = m_.constraints[idx];
    const UnaryInt &x = c.I[0], &y = c.I[1], &z = c.I[2];
    long long xl = m_.cur_lo(x), xh = m_.cur_hi(x);
    long long yl = m_.cur_lo(y), yh = m_.cur_hi(y);
    long long zl = m_.cur_lo(z), zh = m_.cur_hi(z);
    long long corners[4] = {xl * yl, xl * yh, xh * yl, xh * yh};
    long long plo = *std::min_element(corners, corners + 4);
    long long phi = *std::max_element(corners, corners + 4);
    bool ch = m_.assert_geq(z, plo);
    ch |= m_.assert_lt(z, phi + 1);
    if (m_.store.unsat()) return;
    if (ch) {
      fire(idx, "int_times", "bounds");
      enqueue(idx);
      return;
    }
    if (xl == xh) { // z = xl * y, pure threshold unions
      for (long long v = std::min(zl, plo) + 1; v <= std::max(zh, phi); ++v)
        m_.store.merge(z.geq_lit(v), scaled_geq(y, xl, v));
      del(idx, "int_times", "left fixed");
      return;
    }
    if (yl == yh) {
      for (long long v = std::min(zl, plo) + 1; v <= std::max(zh, phi); ++v)
        m_.store.merge(z.geq_lit(v), scaled_geq(x, yl, v));
      del(idx, "int_times", "right fixed");
      return;
    }
    // both free: encoded by value-guarded scaling in phase 3
  }

  void decomp_div_mod(int idx, bool is_div) {
    auto& c = m_.constraints[idx];
    const UnaryInt &x = c.I[0], &d = c.I[1], &out = c.I[2];
    long long dl = m_.cur_lo(d), dh = m_.cur_hi(d);
    if (dl == dh) {
      long long k = dl;
      if (k < 1) fail(std::string(is_div ? "int_div" : "int_mod") + ": divisor must be positive");
      if (is_div) {
        long long qlo = UnaryInt::floordiv(m_.cur_lo(x), k);
        long long qhi = UnaryInt::floordiv(m_.cur_hi(x), k);
        for (long long v = std::min(m_.cur_lo(out), qlo) + 1;
             v <= std::max(m_.cur_hi(out), qhi); ++v)
          m_.store.merge(out.geq_lit(v), x.geq_lit(v * k));
        del(idx, "int_div", "threshold selection");
        return;
      }
      // mod: x = k*floor(x/k) + r via a scaled view of the div selection
      UnaryInt q = x.div_const(k);
      UnaryInt t = q.scaled(k);
      m_.assert_geq(out, 0);
      m_.assert_lt(out, k);
      Constraint plus;
      plus.kind = Kind::IntPlus;
      plus.I = {t, out, x};
      replace(idx, {std::move(plus)}, "int_mod_const");
      return;
    }
    if (dl < 1)
      fail(std::string(is_div ? "int_div" : "int_mod") +
           ": non-constant divisor domain must exclude values below 1");
    // general: x = d*q + r, 0 <= r < d
    long long xl = m_.cur_lo(x), xh = m_.cur_hi(x);
    UnaryInt q = is_div ? out : m_.new_unary(std::min(xl, 0ll), std::max(xh, 0ll));
    UnaryInt r = is_div ? m_.new_unary(0, dh - 1) : out;
    m_.assert_geq(r, 0);
    m_.assert_lt(r, dh);
    long long corners[4] = {dl * m_.cur_lo(q), dl * m_.cur_hi(q), dh * m_.cur_lo(q),
                            dh * m_.cur_hi(q)};
    UnaryInt t = m_.new_unary(*std::min_element(corners, corners + 4),
                              *std::max_element(corners, corners + 4));
    Constraint times;
    times.kind = Kind::IntTimes;
    times.I = {d, q, t};
    Constraint plus;
    plus.kind = Kind::IntPlus;
    plus.I = {t, r, x};
    Constraint lt; // r < d  ==  r <= d-1
    lt.kind = Kind::IntLeq;
    lt.I = {r, d.shifted(-1)};
    std::vector<Constraint> ch;
    ch.push_back(std::move(times));
    ch.push_back(std::move(plus));
    ch.push_back(std::move(lt));
    replace(idx, std::move(ch), is_div ? "int_div_general" : "int_mod_general");
  }

  void decomp_min_max(int idx, bool is_max) {
    auto& c = m_.constraints[idx];
    const UnaryInt &x = c.I[0], &y = c.I[1], &z = c.I[2];
    std::vector<Constraint> out;
    long long lo = std::min({x.lo(), y.lo(), z.lo()});
    long long hi = std::max({x.hi(), y.hi(), z.hi()});
    for (long long v = lo + 1; v <= hi; ++v) {
      Constraint r;
      r.kind = Kind::BoolArrayOpReif;
      r.bop = is_max ? BOp::Or : BOp::And;
      r.L = {{x.geq_lit(v), y.geq_lit(v)}};
      r.x = {z.geq_lit(v)};
      out.push_back(std::move(r));
    }
    replace(idx, std::move(out), is_max ? "int_max" : "int_min");
  }

  void decomp_abs(int idx) {
    auto& c = m_.constraints[idx];
    UnaryInt x = c.I[0], z = c.I[1];
    UnaryInt nx = x.negated();
    std::vector<Constraint> out;
    long long lo = std::min({x.lo(), nx.lo(), z.lo()});
    long long hi = std::max({x.hi(), nx.hi(), z.hi()});
    m_.assert_geq(z, 0);
    for (long long v = lo + 1; v <= hi; ++v) {
      Constraint r;
      r.kind = Kind::BoolArrayOpReif;
      r.bop = BOp::Or;
      r.L = {{x.geq_lit(v), nx.geq_lit(v)}};
      r.x = {z.geq_lit(v)};
      out.push_back(std::move(r));
    }
    replace(idx, std::move(out), "int_abs");
  }

  void decomp_alldiff(int idx) {
    auto& c = m_.constraints[idx];
    std::vector<Constraint> out;
    for (size_t i = 0; i < c.I.size(); ++i)
      for (size_t j = i + 1; j < c.I.size(); ++j) {
        Constraint ne;
        ne.kind = Kind::IntNeq;
        ne.I = {c.I[i], c.I[j]};
        out.push_back(std::move(ne));
      }
    replace(idx, std::move(out), "allDiff");
  }

  void decomp_int_array_op(int idx) {
    auto& c = m_.constraints[idx];
    size_t n = c.I.size() - 1;
    const UnaryInt& target = c.I.back();
    std::vector<Constraint> out;
    if (c.aop == AOp::Plus) {
      if (n == 0) {
        m_.fix_value(target, 0);
        del(idx, "int_array_plus", "empty sum");
        return;
      }
      if (n == 1) {
        Constraint eq;
        eq.kind = Kind::IntEq;
        eq.I = {c.I[0], target};
        replace(idx, {std::move(eq)}, "int_array_plus");
        return;
      }
      if (n == 2) {
        Constraint p;
        p.kind = Kind::IntPlus;
        p.I = {c.I[0], c.I[1], target};
        replace(idx, {std::move(p)}, "int_array_plus");
        return;
      }
      size_t n1 = (n + 1) / 2;
      long long lo1 = 0, hi1 = 0, lo2 = 0, hi2 = 0;
      for (size_t i = 0; i < n; ++i) {
        (i < n1 ? lo1 : lo2) += c.I[i].lo();
        (i < n1 ? hi1 : hi2) += c.I[i].hi();
      }
      UnaryInt t1 = m_.new_unary(lo1, hi1), t2 = m_.new_unary(lo2, hi2);
      Constraint h1;
      h1.kind = Kind::IntArrayOp;
      h1.aop = AOp::Plus;
      h1.I.assign(c.I.begin(), c.I.begin() + static_cast<long>(n1));
      h1.I.push_back(t1);
      Constraint h2;
      h2.kind = Kind::IntArrayOp;
      h2.aop = AOp::Plus;
      h2.I.assign(c.I.begin() + static_cast<long>(n1), c.I.end() - 1);
      h2.I.push_back(t2);
      Constraint p;
      p.kind = Kind::IntPlus;
      p.I = {t1, t2, target};
      out.push_back(std::move(h1));
      out.push_back(std::move(h2));
      out.push_back(std::move(p));
      replace(idx, std::move(out), "int_array_plus");
      return;
    }
    if (c.aop == AOp::Times) {
      if (n == 0) {
        m_.fix_value(target, 1);
        del(idx, "int_array_times", "empty product");
        return;
      }
      if (n == 1) {
        Constraint eq;
        eq.kind = Kind::IntEq;
        eq.I = {c.I[0], target};
        replace(idx, {std::move(eq)}, "int_array_times");
        return;
      }
      if (n == 2) {
        Constraint t;
        t.kind = Kind::IntTimes;
        t.I = {c.I[0], c.I[1], target};
        replace(idx, {std::move(t)}, "int_array_times");
        return;
      }
      long long corners[4] = {c.I[0].lo() * c.I[1].lo(), c.I[0].lo() * c.I[1].hi(),
                              c.I[0].hi() * c.I[1].lo(), c.I[0].hi() * c.I[1].hi()};
      UnaryInt t = m_.new_unary(*std::min_element(corners, corners + 4),
                                *std::max_element(corners, corners + 4));
      Constraint first;
      first.kind = Kind::IntTimes;
      first.I = {c.I[0], c.I[1], t};
      Constraint rest;
      rest.kind = Kind::IntArrayOp;
      rest.aop = AOp::Times;
      rest.I = {t};
      rest.I.insert(rest.I.end(), c.I.begin() + 2, c.I.end());
      out.push_back(std::move(first));
      out.push_back(std::move(rest));
      replace(idx, std::move(out), "int_array_times");
      return;
    }
    // max / min over the whole array, per threshold
    bool is_max = c.aop == AOp::Max;
    long long lo = target.lo(), hi = target.hi();
    for (size_t i = 0; i < n; ++i) {
      lo = std::min(lo, c.I[i].lo());
      hi = std::max(hi, c.I[i].hi());
    }
    for (long long v = lo + 1; v <= hi; ++v) {
      Constraint r;
      r.kind = Kind::BoolArrayOpReif;
      r.bop = is_max ? BOp::Or : BOp::And;
      std::vector<Lit> ms;
      for (size_t i = 0; i < n; ++i) ms.push_back(c.I[i].geq_lit(v));
      r.L = {std::move(ms)};
      r.x = {target.geq_lit(v)};
      out.push_back(std::move(r));
    }
    replace(idx, std::move(out), is_max ? "int_array_max" : "int_array_min");
  }

  void decomp_int_array_sum_rel(int idx) {
    auto& c = m_.constraints[idx];
    size_t n = c.I.size() - 1;
    const UnaryInt& rhs = c.I.back();
    std::vector<Constraint> out;
    if (c.rel == Rel::Eq) {
      Constraint p;
      p.kind = Kind::IntArrayOp;
      p.aop = AOp::Plus;
      p.I = c.I;
      replace(idx, {std::move(p)}, "int_array_sum_eq");
      return;
    }
    long long lo = 0, hi = 0;
    for (size_t i = 0; i < n; ++i) {
      lo += c.I[i].lo();
      hi += c.I[i].hi();
    }
    UnaryInt t = m_.new_unary(lo, hi);
    Constraint p;
    p.kind = Kind::IntArrayOp;
    p.aop = AOp::Plus;
    p.I.assign(c.I.begin(), c.I.end() - 1);
    p.I.push_back(t);
    Constraint r;
    r.kind = Kind::IntLeq;
    switch (c.rel) {
      case Rel::Leq: r.I = {t, rhs}; break;
      case Rel::Geq: r.I = {rhs, t}; break;
      case Rel::Lt: r.I = {t, rhs.shifted(-1)}; break;
      case Rel::Gt: r.I = {rhs, t.shifted(-1)}; break;
      default: fail("internal: bad sum rel");
    }
    out.push_back(std::move(p));
    out.push_back(std::move(r));
    replace(idx, std::move(out), "int_array_sum_rel");
  }

  void decomp_int_array_lin_rel(int idx) {
    auto& c = m_.constraints[idx];
    size_t n = c.I.size() - 1;
    Constraint s;
    s.kind = Kind::IntArraySumRel;
    s.rel = c.rel;
    for (size_t i = 0; i < n; ++i) {
      if (c.K[i] == 0) continue;
      s.I.push_back(c.K[i] == 1 ? c.I[i] : c.I[i].scaled(c.K[i]));
    }
    s.I.push_back(c.I.back());
    replace(idx, {std::move(s)}, "int_array_lin_rel");
  }

  void decomp_sum_modk(int idx, bool is_bool) {
    auto& c = m_.constraints[idx];
    long long k = c.K[0];
    if (k < 1) fail("sum_modK: modulus must be positive");
    std::vector<Constraint> out;
    if (is_bool) {
      long long n = static_cast<long long>(c.L[0].size());
      UnaryInt t = m_.new_unary(0, n);
      Constraint s;
      s.kind = Kind::BoolArraySumRel;
      s.rel = Rel::Eq;
      s.L = c.L;
      s.I = {t};
      Constraint mod;
      mod.kind = Kind::IntMod;
      mod.I = {t, UnaryInt::constant(k), c.I[0]};
      out.push_back(std::move(s));
      out.push_back(std::move(mod));
    } else {
      size_t n = c.I.size() - 1;
      long long lo = 0, hi = 0;
      for (size_t i = 0; i < n; ++i) {
        lo += c.I[i].lo();
        hi += c.I[i].hi();
      }
      UnaryInt t = m_.new_unary(lo, hi);
      Constraint s;
      s.kind = Kind::IntArrayOp;
      s.aop = AOp::Plus;
      s.I.assign(c.I.begin(), c.I.end() - 1);
      s.I.push_back(t);
      Constraint mod;
      mod.kind = Kind::IntMod;
      mod.I = {t, UnaryInt::constant(k), c.I.back()};
      out.push_back(std::move(s));
      out.push_back(std::move(mod));
    }
    replace(idx, std::move(out), "sum_modK");
  }

  // fold constants and complementary pairs out of a sum's literal list
  struct FoldedSum {
    std::vector<Lit> ms;
    long long fixed = 0; // number of members known true
  };

  FoldedSum fold_sum(const std::vector<Lit>& in) {
    FoldedSum f;
    std::vector<Lit> tmp;
    for (Lit l0 : in) {
      Lit l = res(l0);
      if (l.is_true()) {
        ++f.fixed;
        continue;
      }
      if (l.is_false()) continue;
      tmp.push_back(l);
    }
    // cancel complementary pairs: x + ~x contributes exactly 1
    for (Lit l : tmp) {
      bool cancelled = false;
      for (size_t i = 0; i < f.ms.size(); ++i) {
        if (f.ms[i] == ~l) {
          f.ms.erase(f.ms.begin() + static_cast<long>(i));
          ++f.fixed;
          cancelled = true;
          break;
        }
      }
      if (!cancelled) f.ms.push_back(l);
    }
    return f;
  }

  void decomp_bool_array_sum_rel(int idx) {
    auto& c = m_.constraints[idx];
    FoldedSum f = fold_sum(c.L[0]);
    long long n = static_cast<long long>(f.ms.size());
    const UnaryInt& rhs0 = c.I[0];
    UnaryInt rhs = f.fixed ? rhs0.shifted(-f.fixed) : rhs0;
    long long rl = m_.cur_lo(rhs), rh = m_.cur_hi(rhs);
    std::vector<Constraint> out;

    if (rl == rh) {
      long long k = rl;
      switch (c.rel) {
        case Rel::Lt: k -= 1; [[fallthrough]];
        case Rel::Leq: {
          if (k < 0) { m_.store.bind(Lit::t(), false); del(idx, "sum_leq", "negative bound"); return; }
          if (k >= n) { del(idx, "sum_leq", "tautology"); return; }
          if (k == 0) {
            for (Lit l : f.ms) m_.store.bind(l, false);
            del(idx, "sum_leq", "zero capacity");
            return;
          }
          if (k == n - 1) { // at least one false: a single clause
            std::vector<Lit> neg;
            for (Lit l : f.ms) neg.push_back(~l);
            replace(idx, {binext::mk_or(std::move(neg))}, "sum_leq_clause");
            return;
          }
          card::sum_leq(m_, f.ms, k, out);
          replace(idx, std::move(out), "sum_leq");
          return;
        }
        case Rel::Gt: k += 1; [[fallthrough]];
        case Rel::Geq: {
          // sum(ms) >= k  ==  sum(~ms) <= n-k
          if (k <= 0) { del(idx, "sum_geq", "tautology"); return; }
          if (k > n) { m_.store.bind(Lit::t(), false); del(idx, "sum_geq", "impossible"); return; }
          if (k == n) {
            for (Lit l : f.ms) m_.store.bind(l, true);
            del(idx, "sum_geq", "all forced");
            return;
          }
          if (k == 1) {
            replace(idx, {binext::mk_or(f.ms)}, "sum_geq_clause");
            return;
          }
          std::vector<Lit> neg;
          for (Lit l : f.ms) neg.push_back(~l);
          card::sum_leq(m_, neg, n - k, out);
          replace(idx, std::move(out), "sum_geq");
          return;
        }
        case Rel::Eq: {
          if (k < 0 || k > n) { m_.store.bind(Lit::t(), false); del(idx, "sum_eq", "impossible"); return; }
          if (k == 0) {
            for (Lit l : f.ms) m_.store.bind(l, false);
            del(idx, "sum_eq", "zero");
            return;
          }
          if (k == n) {
            for (Lit l : f.ms) m_.store.bind(l, true);
            del(idx, "sum_eq", "full");
            return;
          }
          card::sum_eq(m_, f.ms, UnaryInt::constant(k), k + 1, false, out);
          replace(idx, std::move(out), "sum_eq_const");
          return;
        }
        default: fail("internal: unexpected sum rel");
      }
    }

    // variable right-hand side
    if (c.rel == Rel::Eq) {
      card::sum_eq(m_, f.ms, rhs, 0, false, out);
      replace(idx, std::move(out), "sum_eq");
      return;
    }
    UnaryInt t = m_.new_unary(0, n);
    card::sum_eq(m_, f.ms, t, 0, false, out);
    Constraint r;
    r.kind = Kind::IntLeq;
    switch (c.rel) {
      case Rel::Leq: r.I = {t, rhs}; break;
      case Rel::Geq: r.I = {rhs, t}; break;
      case Rel::Lt: r.I = {t, rhs.shifted(-1)}; break;
      case Rel::Gt: r.I = {rhs, t.shifted(-1)}; break;
      default: fail("internal: unexpected sum rel");
    }
    out.push_back(std::move(r));
    replace(idx, std::move(out), "sum_rel");
  }

  void decomp_pb(int idx) {
    auto& c = m_.constraints[idx];
    Constraint s;
    s.kind = Kind::IntArraySumRel;
    s.rel = c.rel;
    for (size_t i = 0; i < c.K.size(); ++i) {
      long long w = c.K[i];
      if (w == 0) continue;
      Lit l = c.L[0][i];
      std::vector<Lit> bits;
      if (w > 0) {
        bits.assign(static_cast<size_t>(w), l);
        s.I.emplace_back(0, std::move(bits)); // value in {0, w}
      } else {
        bits.assign(static_cast<size_t>(-w), ~l);
        s.I.emplace_back(w, std::move(bits)); // value in {w, 0}
      }
    }
    s.I.push_back(c.I[0]);
    replace(idx, {std::move(s)}, "pb_rel");
  }

  // ---- lexicographic orders ----

  void decomp_bool_lex(int idx) {
    auto& c = m_.constraints[idx];
    bool strict = c.K[0] != 0;
    const auto &xs = c.L[0], &ys = c.L[1];
    std::vector<Constraint> out;
    build_lex_chain(xs, ys, strict, out);
    replace(idx, std::move(out), "bool_lex");
  }

  // forward chain: a_p <-> (equal on positions 0..p); enforcement per
  // position; tail constraint when the left side can exceed the right
  void build_lex_chain(const std::vector<Lit>& xs, const std::vector<Lit>& ys, bool strict,
                       std::vector<Constraint>& out) {
    size_t L = std::min(xs.size(), ys.size());
    bool tail = xs.size() > ys.size() || (strict && xs.size() == ys.size());
    Lit a_prev = Lit::t();
    for (size_t p = 0; p < L; ++p) {
      out.push_back(binext::mk_or({~a_prev, ~xs[p], ys[p]}));
      bool need_next = (p + 1 < L) || (tail && p + 1 == L);
      if (!need_next) break;
      Lit e = m_.new_bool();
      Constraint xr; // e <-> (x_p == y_p), via xor: ~e <-> parity(x,y)=1
      xr.kind = Kind::BoolArrayOpReif;
      xr.bop = BOp::Xor;
      xr.L = {{xs[p], ys[p]}};
      xr.x = {~e};
      out.push_back(std::move(xr));
      Lit a = m_.new_bool();
      out.push_back(binext::mk_and_reif({a_prev, e}, a));
      a_prev = a;
    }
    if (tail) out.push_back(binext::mk_or({~a_prev}));
  }

  void decomp_bool_lex_reif(int idx) {
    auto& c = m_.constraints[idx];
    bool strict = c.K[0] != 0;
    const auto &xs = c.L[0], &ys = c.L[1];
    std::vector<Constraint> out;
    // back recursion: L_i <-> (x_i < y_i) | ((x_i = y_i) & L_{i+1})
    size_t L = std::min(xs.size(), ys.size());
    Lit cur;
    if (xs.size() > ys.size()) cur = Lit::f();
    else if (xs.size() < ys.size()) cur = Lit::t();
    else cur = strict ? Lit::f() : Lit::t();
    for (size_t i = L; i-- > 0;) {
      Lit u = m_.new_bool();
      out.push_back(binext::mk_and_reif({~xs[i], ys[i]}, u));
      Lit e = m_.new_bool();
      Constraint xr;
      xr.kind = Kind::BoolArrayOpReif;
      xr.bop = BOp::Xor;
      xr.L = {{xs[i], ys[i]}};
      xr.x = {~e};
      out.push_back(std::move(xr));
      Lit v = m_.new_bool();
      out.push_back(binext::mk_and_reif({e, cur}, v));
      Lit w = m_.new_bool();
      Constraint orr;
      orr.kind = Kind::BoolArrayOpReif;
      orr.bop = BOp::Or;
      orr.L = {{u, v}};
      orr.x = {w};
      out.push_back(std::move(orr));
      cur = w;
    }
    Constraint eq;
    eq.kind = Kind::BoolEq;
    eq.x = {c.x[0], cur};
    out.push_back(std::move(eq));
    replace(idx, std::move(out), "bool_lex_reif");
  }

  void decomp_int_lex(int idx) {
    auto& c = m_.constraints[idx];
    bool strict = c.K[0] != 0;
    size_t n1 = static_cast<size_t>(c.K[1]);
    std::vector<UnaryInt> xs(c.I.begin(), c.I.begin() + static_cast<long>(n1));
    std::vector<UnaryInt> ys(c.I.begin() + static_cast<long>(n1), c.I.end());
    std::vector<Constraint> out;
    size_t L = std::min(xs.size(), ys.size());
    bool tail = xs.size() > ys.size() || (strict && xs.size() == ys.size());
    Lit a_prev = Lit::t();
    for (size_t p = 0; p < L; ++p) {
      Lit leq = m_.new_bool();
      Constraint lr;
      lr.kind = Kind::IntLeqReif;
      lr.I = {xs[p], ys[p]};
      lr.x = {leq};
      out.push_back(std::move(lr));
      out.push_back(binext::mk_or({~a_prev, leq}));
      bool need_next = (p + 1 < L) || (tail && p + 1 == L);
      if (!need_next) break;
      Lit e = m_.new_bool();
      Constraint er;
      er.kind = Kind::IntEqReif;
      er.I = {xs[p], ys[p]};
      er.x = {e};
      out.push_back(std::move(er));
      Lit a = m_.new_bool();
      out.push_back(binext::mk_and_reif({a_prev, e}, a));
      a_prev = a;
    }
    if (tail) out.push_back(binext::mk_or({~a_prev}));
    replace(idx, std::move(out), "int_lex");
  }

  // ---- binary extension ----

  void decomp_bin_sum(int idx) {
    auto& c = m_.constraints[idx];
    std::vector<BinaryInt> as(c.B.begin(), c.B.end() - 1);
    BinaryInt sum = c.B.back();
    std::vector<Constraint> out;
    binext::decompose_bin_array_sum_eq(m_, as, sum, out);
    replace(idx, std::move(out), "binary_array_sum_eq");
  }

  void decomp_bin_times(int idx) {
    auto& c = m_.constraints[idx];
    std::vector<Constraint> out;
    binext::decompose_bin_times(m_, c.B[0], c.B[1], c.B[2], out);
    replace(idx, std::move(out), "binary_times");
  }

  void decomp_bin_square(int idx) {
    auto& c = m_.constraints[idx];
    std::vector<Constraint> out;
    binext::decompose_bin_square(m_, c.B[0], c.B[1], out);
    replace(idx, std::move(out), "binary_square");
  }

  void decomp_int2binary(int idx) {
    auto& c = m_.constraints[idx];
    const UnaryInt& u = c.I[0];
    m_.assert_geq(u, 0);
    if (m_.store.unsat()) return;
    // rebase to an offset-0 carrier view over the same thresholds
    std::vector<Lit> bits;
    for (long long v = 1; v <= u.hi(); ++v) bits.push_back(u.geq_lit(v));
    UnaryInt carrier(0, std::move(bits));
    std::vector<Constraint> out;
    binext::carry_to_binary(m_, carrier, c.B[0], 1, out);
    replace(idx, std::move(out), "int2binary");
  }
};

inline SimplifyResult simplify(Model& m, const Options& opts) {
  return Simplifier(m, opts).run();
}

} // namespace equi
