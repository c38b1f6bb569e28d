#pragma once

// Test-only oracle: an independent interpreter for source models, evaluated
// by brute-force enumeration over declared domains. Deliberately implemented
// straight from the constraint meanings, sharing nothing with the compile
// pipeline it checks.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "equi/compile.hpp"
#include "equi/parser.hpp"
#include "equi/solver.hpp"

namespace oracle {

using equi::DeclKind;
using equi::SourceModel;
using equi::SrcArg;
using equi::SrcTerm;

using Assignment = std::map<std::string, long long>;

inline long long floordiv(long long a, long long b) {
  long long q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long long lit_val(const SrcArg& a, const Assignment& asg) {
  switch (a.type) {
    case SrcArg::True: return 1;
    case SrcArg::False: return 0;
    case SrcArg::Ident: return asg.at(a.name);
    case SrcArg::NegIdent: return 1 - asg.at(a.name);
    default: return a.num;
  }
}

inline long long int_val(const SrcArg& a, const Assignment& asg) {
  if (a.type == SrcArg::Num) return a.num;
  return asg.at(a.name);
}

inline std::vector<long long> list_vals(const SrcArg& a, const Assignment& asg, bool as_lit) {
  std::vector<long long> out;
  for (const auto& e : a.list) out.push_back(as_lit ? lit_val(e, asg) : int_val(e, asg));
  return out;
}

inline bool rel_holds(const std::string& name, long long a, long long b) {
  if (name.size() >= 3 && name.compare(name.size() - 3, 3, "leq") == 0) return a <= b;
  if (name.size() >= 3 && name.compare(name.size() - 3, 3, "geq") == 0) return a >= b;
  if (name.size() >= 3 && name.compare(name.size() - 3, 3, "neq") == 0) return a != b;
  if (name.size() >= 2 && name.compare(name.size() - 2, 2, "eq") == 0) return a == b;
  if (name.size() >= 2 && name.compare(name.size() - 2, 2, "lt") == 0) return a < b;
  return a > b;
}

inline bool lex_leq(const std::vector<long long>& x, const std::vector<long long>& y,
                    bool strict) {
  size_t n = std::min(x.size(), y.size());
  for (size_t i = 0; i < n; ++i) {
    if (x[i] < y[i]) return true;
    if (x[i] > y[i]) return false;
  }
  if (x.size() < y.size()) return true;
  if (x.size() > y.size()) return false;
  return !strict;
}

inline bool eval_term(const SrcTerm& t, const Assignment& asg) {
  const std::string& n = t.name;
  const auto& A = t.args;
  auto fold_bool = [&](const std::vector<long long>& vs, const std::string& op) -> long long {
    if (vs.empty()) {
      if (op == "or" || op == "xor") return 0;
      return 1; // and, iff over the empty chain
    }
    long long acc = vs[0];
    for (size_t i = 1; i < vs.size(); ++i) {
      if (op == "or") acc = acc | vs[i];
      else if (op == "and") acc = acc & vs[i];
      else if (op == "xor") acc = acc ^ vs[i];
      else acc = acc == vs[i] ? 1 : 0;
    }
    return acc;
  };

  if (n == "new_bool" || n == "new_int" || n == "new_binary") return true;
  if (n == "bool2int") return lit_val(A[0], asg) == int_val(A[1], asg);
  if (n == "bool_eq") return lit_val(A[0], asg) == lit_val(A[1], asg);
  if (n == "comparator") {
    long long x1 = lit_val(A[0], asg), x2 = lit_val(A[1], asg);
    return lit_val(A[2], asg) == (x1 | x2) && lit_val(A[3], asg) == (x1 & x2);
  }
  for (const char* op : {"or", "and", "xor", "iff"}) {
    if (n == std::string("bool_array_") + op)
      return fold_bool(list_vals(A[0], asg, true), op) == 1;
    if (n == std::string("bool_array_") + op + "_reif")
      return fold_bool(list_vals(A[0], asg, true), op) == lit_val(A[1], asg);
    if (n == std::string("bool_") + op + "_reif")
      return fold_bool({lit_val(A[0], asg), lit_val(A[1], asg)}, op) == lit_val(A[2], asg);
  }
  for (const char* rel : {"leq", "geq", "neq", "eq", "lt", "gt"}) {
    if (n == std::string("int_") + rel)
      return rel_holds(n, int_val(A[0], asg), int_val(A[1], asg));
    if (n == std::string("int_") + rel + "_reif")
      return rel_holds(std::string("int_") + rel, int_val(A[0], asg), int_val(A[1], asg)) ==
             (lit_val(A[2], asg) == 1);
  }
  if (n.rfind("int_array_allDiff", 0) == 0) {
    auto vs = list_vals(A[0], asg, false);
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = i + 1; j < vs.size(); ++j)
        if (vs[i] == vs[j]) return false;
    return true;
  }
  if (n == "int_abs") {
    long long v = int_val(A[0], asg);
    return (v < 0 ? -v : v) == int_val(A[1], asg);
  }
  if (n == "int_plus") return int_val(A[0], asg) + int_val(A[1], asg) == int_val(A[2], asg);
  if (n == "int_times") return int_val(A[0], asg) * int_val(A[1], asg) == int_val(A[2], asg);
  if (n == "int_div") {
    long long d = int_val(A[1], asg);
    return d >= 1 && floordiv(int_val(A[0], asg), d) == int_val(A[2], asg);
  }
  if (n == "int_mod") {
    long long d = int_val(A[1], asg);
    if (d < 1) return false;
    long long x = int_val(A[0], asg);
    return x - d * floordiv(x, d) == int_val(A[2], asg);
  }
  if (n == "int_max")
    return std::max(int_val(A[0], asg), int_val(A[1], asg)) == int_val(A[2], asg);
  if (n == "int_min")
    return std::min(int_val(A[0], asg), int_val(A[1], asg)) == int_val(A[2], asg);
  if (n == "int_array_plus" || n == "int_array_times" || n == "int_array_max" ||
      n == "int_array_min") {
    auto vs = list_vals(A[0], asg, false);
    if (vs.empty()) return false; // not generated by tests
    long long acc = vs[0];
    for (size_t i = 1; i < vs.size(); ++i) {
      if (n == "int_array_plus") acc += vs[i];
      else if (n == "int_array_times") acc *= vs[i];
      else if (n == "int_array_max") acc = std::max(acc, vs[i]);
      else acc = std::min(acc, vs[i]);
    }
    return acc == int_val(A[1], asg);
  }
  if (n.rfind("bool_array_sum_mod", 0) == 0) {
    auto vs = list_vals(A[0], asg, true);
    long long s = 0;
    for (long long v : vs) s += v;
    long long k = A[1].num;
    return k >= 1 && s - k * floordiv(s, k) == int_val(A[2], asg);
  }
  if (n.rfind("int_array_sum_mod", 0) == 0) {
    auto vs = list_vals(A[0], asg, false);
    long long s = 0;
    for (long long v : vs) s += v;
    long long k = A[1].num;
    return k >= 1 && s - k * floordiv(s, k) == int_val(A[2], asg);
  }
  if (n.rfind("bool_array_sum_", 0) == 0) {
    auto vs = list_vals(A[0], asg, true);
    long long s = 0;
    for (long long v : vs) s += v;
    return rel_holds(n, s, int_val(A[1], asg));
  }
  if (n.rfind("bool_array_pb_", 0) == 0) {
    auto ws = list_vals(A[0], asg, false);
    auto vs = list_vals(A[1], asg, true);
    long long s = 0;
    for (size_t i = 0; i < vs.size(); ++i) s += ws[i] * vs[i];
    return rel_holds(n, s, int_val(A[2], asg));
  }
  if (n.rfind("int_array_sum_", 0) == 0) {
    auto vs = list_vals(A[0], asg, false);
    long long s = 0;
    for (long long v : vs) s += v;
    return rel_holds(n, s, int_val(A[1], asg));
  }
  if (n.rfind("int_array_lin_", 0) == 0) {
    auto ws = list_vals(A[0], asg, false);
    auto vs = list_vals(A[1], asg, false);
    long long s = 0;
    for (size_t i = 0; i < vs.size(); ++i) s += ws[i] * vs[i];
    return rel_holds(n, s, int_val(A[2], asg));
  }
  if (n == "bool_arrays_lex" || n == "bool_arrays_lexLt")
    return lex_leq(list_vals(A[0], asg, true), list_vals(A[1], asg, true),
                   n == "bool_arrays_lexLt");
  if (n == "bool_arrays_lex_reif" || n == "bool_arrays_lexLt_reif")
    return lex_leq(list_vals(A[0], asg, true), list_vals(A[1], asg, true),
                   n == "bool_arrays_lexLt_reif") == (lit_val(A[2], asg) == 1);
  if (n == "int_arrays_lex" || n == "int_arrays_lexLt")
    return lex_leq(list_vals(A[0], asg, false), list_vals(A[1], asg, false),
                   n == "int_arrays_lexLt");
  if (n == "binary_array_sum_eq") {
    long long s = 0;
    for (const auto& e : A[0].list) s += int_val(e, asg);
    return s == int_val(A[1], asg);
  }
  if (n == "binary_times")
    return int_val(A[0], asg) * int_val(A[1], asg) == int_val(A[2], asg);
  if (n == "binary_square")
    return int_val(A[0], asg) * int_val(A[0], asg) == int_val(A[1], asg);
  if (n == "int2binary") return int_val(A[0], asg) == int_val(A[1], asg);
  throw std::runtime_error("oracle: unhandled template " + n);
}

struct DeclDomain {
  std::string name;
  std::vector<long long> values;
};

inline std::vector<DeclDomain> domains(const SourceModel& src) {
  std::vector<DeclDomain> ds;
  for (const auto& t : src.terms) {
    if (t.name == "new_bool") {
      ds.push_back({t.args[0].name, {0, 1}});
    } else if (t.name == "new_int") {
      DeclDomain d{t.args[0].name, {}};
      for (long long v = t.args[1].num; v <= t.args[2].num; ++v) d.values.push_back(v);
      ds.push_back(std::move(d));
    } else if (t.name == "new_binary") {
      DeclDomain d{t.args[0].name, {}};
      for (long long v = 0; v < (1ll << t.args[1].num); ++v) d.values.push_back(v);
      ds.push_back(std::move(d));
    }
  }
  return ds;
}

// every assignment of declared variables satisfying all constraints
inline std::set<std::vector<long long>> brute_solutions(const SourceModel& src,
                                                        uint64_t limit = 1ull << 24) {
  auto ds = domains(src);
  uint64_t total = 1;
  for (const auto& d : ds) {
    total *= d.values.size();
    if (total > limit) throw std::runtime_error("oracle: domain too large");
  }
  std::set<std::vector<long long>> sols;
  std::vector<size_t> idx(ds.size(), 0);
  for (uint64_t it = 0; it < total; ++it) {
    Assignment asg;
    std::vector<long long> tuple;
    uint64_t rest = it;
    for (size_t i = 0; i < ds.size(); ++i) {
      size_t k = rest % ds[i].values.size();
      rest /= ds[i].values.size();
      asg[ds[i].name] = ds[i].values[k];
      tuple.push_back(ds[i].values[k]);
    }
    bool ok = true;
    for (const auto& t : src.terms)
      if (!eval_term(t, asg)) { ok = false; break; }
    if (ok) sols.insert(tuple);
  }
  return sols;
}

// assignments of declared variables extendable to a model of the CNF
inline std::set<std::vector<long long>> cnf_projected_solutions(const equi::CompileResult& cr) {
  auto ds = domains(cr.source);
  std::set<std::vector<long long>> sols;
  if (cr.cnf.unsat) return sols;
  uint64_t total = 1;
  for (const auto& d : ds) total *= d.values.size();

  // expand xor lines so the plain solver can be used in either mode
  std::vector<std::vector<int>> clauses = cr.cnf.clauses;
  int extra_var = cr.cnf.num_vars;
  for (const auto& x : cr.cnf.xor_clauses) {
    int t = 0;
    bool have_t = false;
    for (size_t i = 0; i < x.size(); ++i) {
      if (!have_t) { t = x[i]; have_t = true; continue; }
      if (i + 1 < x.size()) {
        int tn = ++extra_var;
        clauses.push_back({-tn, t, x[i]});
        clauses.push_back({-tn, -t, -x[i]});
        clauses.push_back({tn, -t, x[i]});
        clauses.push_back({tn, t, -x[i]});
        t = tn;
      } else {
        clauses.push_back({t, x[i]});
        clauses.push_back({-t, -x[i]});
      }
    }
    if (x.size() == 1) clauses.push_back({x[0]});
  }

  for (uint64_t it = 0; it < total; ++it) {
    Assignment asg;
    std::vector<long long> tuple;
    uint64_t rest = it;
    for (size_t i = 0; i < ds.size(); ++i) {
      size_t k = rest % ds[i].values.size();
      rest /= ds[i].values.size();
      asg[ds[i].name] = ds[i].values[k];
      tuple.push_back(ds[i].values[k]);
    }
    // units fixing the declared bits per the varmap
    bool feasible = true;
    std::vector<int> units;
    for (const auto& e : cr.varmap.entries) {
      long long v = asg.at(e.name);
      auto want_bit = [&](size_t j) {
        if (e.kind == DeclKind::Bool) return v == 1;
        if (e.kind == DeclKind::Int) return v >= e.lo + static_cast<long long>(j) + 1;
        return ((v >> j) & 1) != 0;
      };
      if (e.kind == DeclKind::Int && e.bits.empty() && v != e.lo) { feasible = false; break; }
      for (size_t j = 0; j < e.bits.size() && feasible; ++j) {
        bool want = want_bit(j);
        if (e.bits[j].dimacs == 0) {
          if (e.bits[j].value != want) feasible = false;
        } else {
          units.push_back(want ? e.bits[j].dimacs : -e.bits[j].dimacs);
        }
      }
      if (!feasible) break;
    }
    if (!feasible) continue;
    equi::Solver s;
    s.ensure_var(extra_var);
    bool ok = true;
    for (const auto& c : clauses)
      if (!s.add_clause(c)) { ok = false; break; }
    for (int u : units)
      if (ok && !s.add_clause({u})) ok = false;
    if (ok && s.solve() == equi::Solver::Result::Sat) sols.insert(tuple);
  }
  return sols;
}

} // namespace oracle
