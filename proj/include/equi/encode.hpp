#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "equi/cnf.hpp"
#include "equi/model.hpp"
#include "equi/simplify.hpp"
#include "equi/unary.hpp"

namespace equi {

// literal for a*y >= v (a constant)
inline Lit scaled_geq_lit(const UnaryInt& y, long long a, long long v) {
  if (a == 0) return v <= 0 ? Lit::t() : Lit::f();
  if (a > 0) return y.geq_lit(UnaryInt::ceildiv(v, a));
  return ~y.geq_lit(UnaryInt::floordiv(v, a) + 1);
}

// Maps each declared identifier to its resolved bits in the emitted CNF.
struct VarMap {
  struct Bit {
    int dimacs = 0; // 0 = constant
    bool value = false;
  };
  struct Entry {
    std::string name;
    DeclKind kind{};
    long long lo = 0, hi = 0; // Int
    int width = 0;            // Binary
    std::vector<Bit> bits;    // Int: thresholds lo+1..hi; Bool: one; Binary: lsb first
  };
  std::vector<Entry> entries;
};

struct EncodeStats {
  std::vector<std::pair<std::string, size_t>> per_constraint; // label -> clauses, by id
  size_t domain_clauses = 0;
};

// Phase 3: every surviving simplified constraint is encoded to clauses;
// clauses satisfied by resolved constants are dropped and false literals
// deleted before emission. Output is deterministic for a fixed model.
class Encoder {
public:
  Encoder(const Model& m, const Options& opts) : m_(m), opts_(opts) {}

  CnfDoc doc;
  VarMap varmap;
  EncodeStats stats;

  void run() {
    if (m_.status() == ModelStatus::UnsatAtCompileTime) {
      doc.unsat = true;
      build_varmap();
      doc.num_vars = next_id_ - 1;
      return;
    }
    // order-encoding monotonicity for declared integers
    for (const auto& d : m_.decls) {
      if (d.kind != DeclKind::Int) continue;
      size_t before = doc.clauses.size();
      for (long long v = d.num.lo() + 1; v < d.num.hi(); ++v)
        emit({d.num.geq_lit(v), ~d.num.geq_lit(v + 1)});
      size_t n = doc.clauses.size() - before;
      stats.domain_clauses += n;
      if (n) doc.notes.push_back({before, n, "domain " + d.name});
    }
    for (const auto& c : m_.constraints) {
      if (!c.alive) continue;
      size_t before = doc.clauses.size();
      encode_constraint(c);
      size_t n = doc.clauses.size() - before;
      stats.per_constraint.emplace_back(c.label(), n);
      if (n) doc.notes.push_back({before, n, c.label() + " #" + std::to_string(c.id)});
    }
    build_varmap();
    doc.num_vars = next_id_ - 1;
    doc.check();
  }

public:
  // root var -> dimacs id (0 = never emitted); valid after run()
  const std::vector<int>& root_ids() const { return id_of_root_; }

private:
  const Model& m_;
  const Options& opts_;
  std::vector<int> id_of_root_;
  int next_id_ = 1;

  int dimacs_of(Lit resolved) {
    uint32_t v = resolved.var();
    if (id_of_root_.size() <= v) id_of_root_.resize(v + 1, 0);
    if (id_of_root_[v] == 0) id_of_root_[v] = next_id_++;
    int id = id_of_root_[v];
    return resolved.negated() ? -id : id;
  }

  // resolve, simplify, and push one clause; returns false if dropped
  bool emit(const std::vector<Lit>& lits) {
    std::vector<int> out;
    for (Lit l0 : lits) {
      Lit l = m_.store.resolve(l0);
      if (l.is_true()) return false;
      if (l.is_false()) continue;
      int d = dimacs_of(l);
      bool dup = false;
      for (int e : out) {
        if (e == d) { dup = true; break; }
        if (e == -d) return false; // tautology
      }
      if (!dup) out.push_back(d);
    }
    if (out.empty()) fail("internal: encoder derived an empty clause from a live constraint");
    doc.clauses.push_back(std::move(out));
    return true;
  }

  void encode_constraint(const Constraint& c) {
    switch (c.kind) {
      case Kind::BoolArrayOp:
        if (c.bop == BOp::Or) {
          emit(c.L[0]);
        } else if (c.bop == BOp::Xor) {
          encode_xor(c.L[0]);
        } else {
          fail("internal: unexpected surviving bool_array_op");
        }
        return;
      case Kind::BoolArrayOpReif: return encode_reif(c);
      case Kind::Comparator: return encode_comparator(c);
      case Kind::IntLeq: return encode_int_leq(c.I[0], c.I[1]);
      case Kind::IntNeq: return encode_int_neq(c.I[0], c.I[1]);
      case Kind::IntLeqReif: return encode_int_leq_reif(c.I[0], c.I[1], c.x[0]);
      case Kind::IntPlus: return encode_int_plus_adder(c.I[0], c.I[1], c.I[2]);
      case Kind::IntTimes: return encode_int_times(c.I[0], c.I[1], c.I[2]);
      default:
        fail(std::string("internal: constraint survived simplification unencoded: ") +
             kind_name(c.kind));
    }
  }

  void encode_xor(const std::vector<Lit>& lits) {
    // fold constants; parity target starts at 1 (xor list must be odd)
    bool target = true;
    std::vector<Lit> ms;
    for (Lit l0 : lits) {
      Lit l = m_.store.resolve(l0);
      if (l.is_const()) {
        if (l.is_true()) target = !target;
        continue;
      }
      ms.push_back(l);
    }
    if (ms.empty()) {
      if (target) fail("internal: false xor survived");
      return;
    }
    if (ms.size() == 1) {
      emit({target ? ms[0] : ~ms[0]});
      return;
    }
    if (opts_.xor_mode) {
      if (!target) ms[0] = ~ms[0];
      std::vector<int> line;
      for (Lit l : ms) line.push_back(dimacs_of(l));
      doc.xor_clauses.push_back(std::move(line));
      return;
    }
    // parity chain: t1 = l1; t_i <-> t_{i-1} ^ l_i; last step closes at target
    int t = dimacs_of(ms[0]);
    for (size_t i = 1; i + 1 < ms.size(); ++i) {
      int li = dimacs_of(ms[i]);
      int tn = next_id_++;
      doc.clauses.push_back({-tn, t, li});
      doc.clauses.push_back({-tn, -t, -li});
      doc.clauses.push_back({tn, -t, li});
      doc.clauses.push_back({tn, t, -li});
      t = tn;
    }
    int last = dimacs_of(ms.back());
    if (target) { // t ^ last = 1
      doc.clauses.push_back({t, last});
      doc.clauses.push_back({-t, -last});
    } else {
      doc.clauses.push_back({-t, last});
      doc.clauses.push_back({t, -last});
    }
  }

  void encode_reif(const Constraint& c) {
    Lit r = c.x[0];
    const auto& ms = c.L[0];
    if (c.bop == BOp::Or) {
      for (Lit l : ms) emit({~l, r});
      std::vector<Lit> big;
      big.push_back(~r);
      for (Lit l : ms) big.push_back(l);
      emit(big);
      return;
    }
    if (c.bop == BOp::And) {
      for (Lit l : ms) emit({~r, l});
      std::vector<Lit> big;
      big.push_back(r);
      for (Lit l : ms) big.push_back(~l);
      emit(big);
      return;
    }
    fail("internal: unexpected surviving reif op");
  }

  void encode_comparator(const Constraint& c) {
    Lit a = c.x[0], b = c.x[1], o1 = c.x[2], o2 = c.x[3];
    emit({~a, o1});
    emit({~b, o1});
    emit({~a, ~b, o2});
    if (opts_.onesided_comparators && c.relax) return;
    emit({a, b, ~o1});
    emit({a, ~o2});
    emit({b, ~o2});
  }

  void encode_int_leq(const UnaryInt& x, const UnaryInt& y) {
    long long lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
    std::set<std::vector<int>> seen;
    for (long long v = lo + 1; v <= hi; ++v)
      emit_once(seen, {~x.geq_lit(v), y.geq_lit(v)});
  }

  void encode_int_neq(const UnaryInt& x, const UnaryInt& y) {
    long long lo = std::max(x.lo(), y.lo()), hi = std::min(x.hi(), y.hi());
    std::set<std::vector<int>> seen;
    for (long long v = lo; v <= hi; ++v)
      emit_once(seen, {~x.geq_lit(v), x.geq_lit(v + 1), ~y.geq_lit(v), y.geq_lit(v + 1)});
  }

  void encode_int_leq_reif(const UnaryInt& x, const UnaryInt& y, Lit r) {
    long long lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
    std::set<std::vector<int>> seen;
    for (long long v = lo + 1; v <= hi; ++v)
      emit_once(seen, {~r, ~x.geq_lit(v), y.geq_lit(v)}); // r -> x<=y
    for (long long w = lo; w <= hi; ++w)
      emit_once(seen, {r, ~y.geq_lit(w), x.geq_lit(w + 1)}); // ~r -> y>=w -> x>=w+1
  }

  void encode_int_plus_adder(const UnaryInt& x, const UnaryInt& y, const UnaryInt& z) {
    int mw = x.width(), pw = y.width();
    long long base = x.lo() + y.lo();
    auto csl = [&](long long t) { return z.geq_lit(base + t); };
    for (int i = 1; i <= mw; ++i) emit({~x.bit(i), csl(i)});
    for (int j = 1; j <= pw; ++j) emit({~y.bit(j), csl(j)});
    for (int i = 1; i <= mw; ++i) emit({x.bit(i), ~csl(pw + i)});
    for (int j = 1; j <= pw; ++j) emit({y.bit(j), ~csl(mw + j)});
    for (int i = 1; i <= mw; ++i)
      for (int j = 1; j <= pw; ++j) emit({~x.bit(i), ~y.bit(j), csl(i + j)});
    for (int i = 1; i <= mw; ++i)
      for (int j = 1; j <= pw; ++j) emit({x.bit(i), y.bit(j), ~csl(i + j - 1)});
  }

  void encode_int_times(const UnaryInt& x0, const UnaryInt& y0, const UnaryInt& z) {
    // guard on the operand with the smaller current domain
    long long xw = m_.cur_hi(x0) - m_.cur_lo(x0);
    long long yw = m_.cur_hi(y0) - m_.cur_lo(y0);
    const UnaryInt& g = xw <= yw ? x0 : y0;
    const UnaryInt& o = xw <= yw ? y0 : x0;
    long long gl = m_.cur_lo(g), gh = m_.cur_hi(g);
    long long ol = m_.cur_lo(o), oh = m_.cur_hi(o);
    long long corners[4] = {gl * ol, gl * oh, gh * ol, gh * oh};
    long long vlo = std::min(z.lo(), *std::min_element(corners, corners + 4));
    long long vhi = std::max(z.hi(), *std::max_element(corners, corners + 4));
    for (long long a = gl; a <= gh; ++a) {
      if (!m_.value_possible(g, a)) continue;
      Lit g1 = ~g.geq_lit(a), g2 = g.geq_lit(a + 1); // ~(g = a)
      for (long long v = vlo + 1; v <= vhi; ++v) {
        Lit t = scaled_geq_lit(o, a, v);
        emit({g1, g2, ~z.geq_lit(v), t});
        emit({g1, g2, z.geq_lit(v), ~t});
      }
    }
  }

  void emit_once(std::set<std::vector<int>>& seen, const std::vector<Lit>& lits) {
    size_t before = doc.clauses.size();
    if (!emit(lits)) return;
    std::vector<int> sorted = doc.clauses.back();
    std::sort(sorted.begin(), sorted.end());
    if (!seen.insert(std::move(sorted)).second) doc.clauses.resize(before);
  }

  void build_varmap() {
    for (const auto& d : m_.decls) {
      VarMap::Entry e;
      e.name = d.name;
      e.kind = d.kind;
      auto bit_of = [&](Lit l0) {
        VarMap::Bit b;
        Lit l = m_.store.resolve(l0);
        if (l.is_const()) {
          b.dimacs = 0;
          b.value = l.is_true();
        } else {
          b.dimacs = doc.unsat ? 0 : dimacs_of(l);
        }
        return b;
      };
      if (d.kind == DeclKind::Bool) {
        e.bits.push_back(bit_of(d.lit));
      } else if (d.kind == DeclKind::Int) {
        e.lo = d.num.lo();
        e.hi = d.num.hi();
        for (long long v = e.lo + 1; v <= e.hi; ++v) e.bits.push_back(bit_of(d.num.geq_lit(v)));
      } else {
        e.width = d.bin.width();
        for (int i = 1; i <= e.width; ++i) e.bits.push_back(bit_of(d.bin.bit(i)));
      }
      varmap.entries.push_back(std::move(e));
    }
  }
};

// ---------------------------------------------------------------------------
// Varmap serialization and solution decoding.
// ---------------------------------------------------------------------------

inline void write_varmap(const VarMap& vm, std::ostream& os) {
  auto bit_str = [](const VarMap::Bit& b) {
    if (b.dimacs == 0) return std::string(b.value ? "T" : "F");
    return std::to_string(b.dimacs);
  };
  for (const auto& e : vm.entries) {
    if (e.kind == DeclKind::Bool) {
      const auto& b = e.bits[0];
      if (b.dimacs == 0)
        os << "bool " << e.name << " const " << (b.value ? "true" : "false") << '\n';
      else
        os << "bool " << e.name << " alias " << b.dimacs << '\n';
      continue;
    }
    if (e.kind == DeclKind::Int) {
      bool all_const = true;
      long long v = e.lo;
      for (size_t j = 0; j < e.bits.size(); ++j) {
        if (e.bits[j].dimacs != 0) { all_const = false; break; }
        if (e.bits[j].value) v = e.lo + static_cast<long long>(j) + 1;
      }
      if (all_const) {
        os << "int " << e.name << " const " << v << '\n';
      } else {
        os << "int " << e.name << ' ' << e.lo << ' ' << e.hi << " bits";
        for (const auto& b : e.bits) os << ' ' << bit_str(b);
        os << '\n';
      }
      continue;
    }
    os << "binary " << e.name << ' ' << e.width << " bits";
    for (const auto& b : e.bits) os << ' ' << bit_str(b);
    os << '\n';
  }
}

inline VarMap read_varmap(std::istream& is) {
  VarMap vm;
  std::string line;
  auto parse_bit = [](const std::string& tok) {
    VarMap::Bit b;
    if (tok == "T") { b.dimacs = 0; b.value = true; }
    else if (tok == "F") { b.dimacs = 0; b.value = false; }
    else b.dimacs = std::stoi(tok);
    return b;
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind, name, tok;
    ls >> kind >> name;
    VarMap::Entry e;
    e.name = name;
    if (kind == "bool") {
      e.kind = DeclKind::Bool;
      ls >> tok;
      if (tok == "const") {
        std::string v;
        ls >> v;
        e.bits.push_back({0, v == "true"});
      } else {
        int d;
        ls >> d;
        e.bits.push_back({d, false});
      }
    } else if (kind == "int") {
      e.kind = DeclKind::Int;
      ls >> tok;
      if (tok == "const") {
        long long v;
        ls >> v;
        e.lo = e.hi = v;
      } else {
        e.lo = std::stoll(tok);
        ls >> e.hi >> tok; // "bits"
        while (ls >> tok) e.bits.push_back(parse_bit(tok));
      }
    } else if (kind == "binary") {
      e.kind = DeclKind::Binary;
      ls >> e.width >> tok;
      while (ls >> tok) e.bits.push_back(parse_bit(tok));
    } else {
      fail("bad varmap line: " + line);
    }
    vm.entries.push_back(std::move(e));
  }
  return vm;
}

// Decode one entry against a model valuation of DIMACS vars.
template <typename ValueFn>
long long decode_int(const VarMap::Entry& e, ValueFn value) {
  if (e.kind == DeclKind::Int && e.bits.empty()) return e.lo; // const
  auto bitval = [&](const VarMap::Bit& b) {
    if (b.dimacs == 0) return b.value;
    return b.dimacs > 0 ? value(b.dimacs) : !value(-b.dimacs);
  };
  if (e.kind == DeclKind::Int) {
    long long v = e.lo;
    for (size_t j = 0; j < e.bits.size(); ++j)
      if (bitval(e.bits[j])) v = e.lo + static_cast<long long>(j) + 1;
    return v;
  }
  if (e.kind == DeclKind::Binary) {
    long long v = 0;
    for (size_t j = 0; j < e.bits.size(); ++j)
      if (bitval(e.bits[j])) v += 1ll << j;
    return v;
  }
  return bitval(e.bits[0]) ? 1 : 0;
}

} // namespace equi
