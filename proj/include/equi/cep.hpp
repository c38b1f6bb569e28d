#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "equi/cnf.hpp"
#include "equi/encode.hpp"
#include "equi/model.hpp"
#include "equi/simplify.hpp"
#include "equi/solver.hpp"

namespace equi {

// ---------------------------------------------------------------------------
// Backbone computation by iterated SAT: keep a table of values seen for each
// tracked variable, and after each model ask the solver to flip any variable
// seen with a single value so far. The run ends with exactly one
// unsatisfiable call; single-valued variables are the backbone.
// ---------------------------------------------------------------------------

enum class BackboneValue { True, False, Free };

struct IterationAudit {
  int sat_calls = 0;
  int unsat_calls = 0;
  // partition refinement trace: number of blocks after each satisfiable call
  std::vector<int> blocks_after;
  bool strictly_refining = true;
};

struct BackboneResult {
  bool unsat = false;
  std::map<int, BackboneValue> values; // per tracked var
  IterationAudit audit;
};

// Call-count bounds: at most n+1 satisfiable calls over n tracked formula
// variables, exactly one unsatisfiable call, and strict partition refinement
// after the first model. A violation is an internal bug, not a user error.
inline void check_iteration_audit(const IterationAudit& audit, size_t n_tracked) {
  if (audit.sat_calls > static_cast<int>(n_tracked) + 1)
    fail("internal: backbone iteration exceeded the n+1 satisfiable-call bound");
  if (audit.unsat_calls != 1)
    fail("internal: backbone iteration must end with exactly one unsatisfiable call");
  if (!audit.strictly_refining)
    fail("internal: backbone iteration failed to refine the partition");
}

namespace cepdetail {

struct ValueTable {
  std::vector<uint8_t> seen_true, seen_false;
  std::vector<int> vars;

  explicit ValueTable(const std::vector<int>& tracked) : vars(tracked) {
    int maxv = 0;
    for (int v : tracked) maxv = std::max(maxv, v);
    seen_true.assign(static_cast<size_t>(maxv) + 1, 0);
    seen_false.assign(static_cast<size_t>(maxv) + 1, 0);
  }

  bool single(int v) const { return seen_true[v] != seen_false[v]; }
};

// partition of tracked assignments by xor-signature against the first model
inline int count_blocks(const std::vector<std::vector<uint8_t>>& models, size_t nvars) {
  std::map<std::vector<uint8_t>, int> sig_count;
  for (size_t i = 0; i < nvars + 1; ++i) { // + slot for the constant true
    std::vector<uint8_t> sig;
    for (size_t k = 1; k < models.size(); ++k) {
      uint8_t v0 = i == nvars ? 1 : models[0][i];
      uint8_t vk = i == nvars ? 1 : models[k][i];
      sig.push_back(static_cast<uint8_t>(v0 ^ vk));
    }
    ++sig_count[sig];
  }
  return static_cast<int>(sig_count.size());
}

} // namespace cepdetail

// Core loop shared by backbone() and cep(). `phase1_vars` restricts the
// blocking clause of the first added clause to a sub-range of tracked
// variables (the CEP optimization of focusing on the formula variables in
// the first two iterations); later clauses range over all tracked vars.
inline BackboneResult backbone_loop(Solver& solver, const std::vector<int>& tracked,
                                    size_t phase1_count, const std::vector<int>& partition_vars) {
  BackboneResult res;
  cepdetail::ValueTable table(tracked);
  std::vector<std::vector<uint8_t>> partition_models;

  if (solver.solve() == Solver::Result::Unsat) {
    res.unsat = true;
    res.audit.unsat_calls = 1;
    return res;
  }
  ++res.audit.sat_calls;

  auto record = [&](bool first) {
    for (int v : tracked) {
      if (first && !solver.occurs(v)) {
        // the solver assigns no value to it: both values are possible
        table.seen_true[v] = table.seen_false[v] = 1;
        continue;
      }
      if (solver.model_value(v)) table.seen_true[v] = 1;
      else table.seen_false[v] = 1;
    }
    std::vector<uint8_t> pm;
    for (int v : partition_vars) pm.push_back(solver.model_value(v) ? 1 : 0);
    partition_models.push_back(std::move(pm));
    res.audit.blocks_after.push_back(
        cepdetail::count_blocks(partition_models, partition_vars.size()));
  };
  record(true);

  int iteration = 1;
  for (;;) {
    size_t limit = iteration == 1 ? phase1_count : tracked.size();
    std::vector<int> clause;
    for (size_t i = 0; i < limit; ++i) {
      int v = tracked[i];
      if (!table.single(v)) continue;
      clause.push_back(table.seen_true[v] ? -v : v); // ask to flip
    }
    ++iteration;
    if (!solver.add_clause(clause)) {
      ++res.audit.unsat_calls;
      break;
    }
    if (solver.solve() == Solver::Result::Unsat) {
      ++res.audit.unsat_calls;
      break;
    }
    ++res.audit.sat_calls;
    record(false);
  }

  for (size_t k = 1; k < res.audit.blocks_after.size(); ++k)
    if (res.audit.blocks_after[k] <= res.audit.blocks_after[k - 1])
      res.audit.strictly_refining = false;

  for (int v : tracked) {
    if (table.single(v))
      res.values[v] = table.seen_true[v] ? BackboneValue::True : BackboneValue::False;
    else
      res.values[v] = BackboneValue::Free;
  }
  return res;
}

inline BackboneResult backbone(const CnfDoc& doc, const std::vector<int>& tracked,
                               const Solver::Options& sopts = {}) {
  Solver s;
  s.opts = sopts;
  s.ensure_var(doc.num_vars);
  if (doc.unsat) {
    BackboneResult r;
    r.unsat = true;
    r.audit.unsat_calls = 1;
    return r;
  }
  for (const auto& c : doc.clauses) s.add_clause(c);
  for (int v : tracked) s.ensure_var(v);
  BackboneResult r = backbone_loop(s, tracked, tracked.size(), tracked);
  if (!r.unsat) check_iteration_audit(r.audit, tracked.size());
  return r;
}

// ---------------------------------------------------------------------------
// Complete equi-propagation: extend the formula with selector variables
// e_ij <-> (x_i <-> x_j) for 0 <= i < j <= n (index 0 standing for the
// constant true, so e_0j tracks the backbone of x_j), compute the backbone
// of the extension, and read equations off the forced selectors.
// ---------------------------------------------------------------------------

struct CepEquation {
  int a = 0;      // 0 = constant true
  int b = 0;      // tracked variable
  bool opposite = false; // a = ~b
};

struct CepResult {
  bool unsat = false;
  std::vector<CepEquation> equations; // canonical: per block, smallest index first
  IterationAudit audit;
};

inline CepResult cep(const CnfDoc& doc, const std::vector<int>& tracked,
                     const Solver::Options& sopts = {}) {
  CepResult res;
  if (doc.unsat) {
    res.unsat = true;
    res.audit.unsat_calls = 1;
    return res;
  }
  Solver s;
  s.opts = sopts;
  s.ensure_var(doc.num_vars);
  for (const auto& c : doc.clauses) s.add_clause(c);
  for (int v : tracked) s.ensure_var(v);

  size_t n = tracked.size();
  int next = doc.num_vars;
  for (int v : tracked) next = std::max(next, v);
  std::vector<int> all = tracked; // x vars first: phase-1 blocking ranges over these
  std::vector<std::pair<std::pair<size_t, size_t>, int>> selectors; // ((i,j), e), i=0 const
  for (size_t i = 0; i + 1 <= n; ++i)
    for (size_t j = i + 1; j <= n; ++j) {
      int e = ++next;
      s.ensure_var(e);
      if (i == 0) { // e <-> x_j
        int x = tracked[j - 1];
        s.add_clause({-e, x});
        s.add_clause({e, -x});
      } else { // e <-> (x_i <-> x_j)
        int xi = tracked[i - 1], xj = tracked[j - 1];
        s.add_clause({-e, -xi, xj});
        s.add_clause({-e, xi, -xj});
        s.add_clause({e, xi, xj});
        s.add_clause({e, -xi, -xj});
      }
      selectors.push_back({{i, j}, e});
      all.push_back(e);
    }

  BackboneResult bb = backbone_loop(s, all, n, tracked);
  res.audit = bb.audit;
  if (bb.unsat) {
    res.unsat = true;
    return res;
  }
  check_iteration_audit(bb.audit, n);

  // union-find over {0 .. n} with parity, from forced selectors
  std::vector<int> parent(n + 1);
  std::vector<uint8_t> par(n + 1, 0);
  for (size_t i = 0; i <= n; ++i) parent[i] = static_cast<int>(i);
  std::function<std::pair<int, uint8_t>(int)> find = [&](int v) -> std::pair<int, uint8_t> {
    uint8_t sgn = 0;
    while (parent[v] != v) {
      sgn ^= par[v];
      v = parent[v];
    }
    return {v, sgn};
  };
  for (const auto& sel : selectors) {
    auto val = bb.values.at(sel.second);
    if (val == BackboneValue::Free) continue;
    bool opposite = val == BackboneValue::False;
    auto [ra, sa] = find(static_cast<int>(sel.first.first));
    auto [rb, sb] = find(static_cast<int>(sel.first.second));
    if (ra == rb) continue;
    if (ra > rb) { std::swap(ra, rb); std::swap(sa, sb); }
    parent[rb] = ra;
    par[rb] = static_cast<uint8_t>(sa ^ sb ^ (opposite ? 1 : 0));
  }
  // report per block, relative to the smallest member
  for (size_t j = 1; j <= n; ++j) {
    auto [r, sgn] = find(static_cast<int>(j));
    if (r == static_cast<int>(j)) continue;
    CepEquation eq;
    eq.a = r == 0 ? 0 : tracked[static_cast<size_t>(r) - 1];
    eq.b = tracked[j - 1];
    eq.opposite = sgn != 0;
    res.equations.push_back(eq);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Compile-time pass: encode one constraint group to a scratch CNF over the
// group's bit variables, run CEP on it, and import every derived equation
// into the model store. The caller re-enters the simplification fixpoint.
// ---------------------------------------------------------------------------

struct CepPassReport {
  bool ran = false;
  int tracked = 0;
  int equations = 0;
  IterationAudit audit;
};

inline CepPassReport apply_cep_pass(Model& m, int group, const Options& opts) {
  CepPassReport rep;
  std::vector<int> members;
  for (const auto& c : m.constraints)
    if (c.alive && c.group == group) members.push_back(c.id);
  if (members.empty()) return rep;

  // Scratch model sharing the variable space and current store. The group's
  // constraints are already at the simplification fixpoint, so they encode
  // directly; any equality the ad-hoc rules could find is in the store.
  Model scratch;
  scratch.store = m.store;
  scratch.store.on_absorb = nullptr;
  while (scratch.num_vars() < m.num_vars()) scratch.new_bool();
  for (int id : members) {
    Constraint c = m.constraints[id];
    c.group = -1;
    c.parent = -1;
    scratch.add(std::move(c));
  }
  // monotonicity chains of declared integers touched by the group: these
  // clauses exist in the full CNF, so adding them here stays sound
  std::vector<uint8_t> in_group(m.store.num_vars() + 1, 0);
  for (int id : members) {
    const Constraint& c = m.constraints[id];
    auto mark = [&](Lit l0) {
      Lit l = m.store.resolve(l0);
      if (l.is_var()) in_group[l.var()] = 1;
    };
    for (const auto& arr : c.L)
      for (Lit l : arr) mark(l);
    for (Lit l : c.x) mark(l);
    for (const auto& u : c.I)
      for (Lit l : u.bits()) mark(l);
    for (const auto& b : c.B)
      for (Lit l : b.bits()) mark(l);
  }
  for (const auto& d : m.decls) {
    if (d.kind != DeclKind::Int || d.num.width() < 2) continue;
    bool touched = false;
    for (Lit l0 : d.num.bits()) {
      Lit l = m.store.resolve(l0);
      if (l.is_var() && in_group[l.var()]) { touched = true; break; }
    }
    if (!touched) continue;
    for (long long v = d.num.lo() + 1; v < d.num.hi(); ++v) {
      Constraint mono;
      mono.kind = Kind::BoolArrayOp;
      mono.bop = BOp::Or;
      mono.L = {{d.num.geq_lit(v), ~d.num.geq_lit(v + 1)}};
      scratch.add(std::move(mono));
    }
  }

  Options sopts = opts;
  sopts.cep_groups.clear();
  sopts.trace = false;
  sopts.annotate = false;
  Encoder enc(scratch, sopts);
  enc.run();

  // tracked CNF vars = emitted roots of the shared variable space
  std::vector<int> tracked;
  std::vector<uint32_t> root_of_dimacs(1, 0);
  const auto& ids = enc.root_ids();
  for (uint32_t r = 0; r < ids.size(); ++r) {
    if (ids[r] == 0) continue;
    if (static_cast<size_t>(ids[r]) >= root_of_dimacs.size())
      root_of_dimacs.resize(static_cast<size_t>(ids[r]) + 1, 0);
    root_of_dimacs[static_cast<size_t>(ids[r])] = r;
    tracked.push_back(ids[r]);
  }
  std::sort(tracked.begin(), tracked.end());
  rep.tracked = static_cast<int>(tracked.size());

  Solver::Options sv;
  sv.restarts = opts.solver_restarts;
  CepResult cr = cep(enc.doc, tracked, sv);
  rep.ran = true;
  rep.audit = cr.audit;
  if (cr.unsat) {
    m.store.bind(Lit::t(), false);
    return rep;
  }
  for (const auto& eq : cr.equations) {
    Lit b = Lit::make(root_of_dimacs[static_cast<size_t>(eq.b)]);
    if (eq.a == 0) {
      m.store.bind(b, !eq.opposite);
    } else {
      Lit a = Lit::make(root_of_dimacs[static_cast<size_t>(eq.a)]);
      m.store.merge(a, eq.opposite ? ~b : b);
    }
    ++rep.equations;
  }
  return rep;
}

} // namespace equi
