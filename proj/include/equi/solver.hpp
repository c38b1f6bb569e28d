#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

namespace equi {

// Incremental CDCL solver: two-watched-literal propagation, first-UIP
// learning with local clause minimization, VSIDS branching with phase
// saving, optional Luby restarts (off by default), and a simple learnt
// clause reduction scheme. Clauses added between solve() calls persist;
// learnt data is kept across calls.
//
// Literals use the internal coding 2*var + sign with vars numbered from 1.
// Deterministic: no randomness, ties broken by variable index.
class Solver {
public:
  struct Options {
    bool restarts = false;
    int restart_base = 100;
  };

  struct Stats {
    uint64_t conflicts = 0;
    uint64_t decisions = 0;
    uint64_t propagations = 0;
    uint64_t solves = 0;
  };

  Options opts;

  Solver() { watches_.resize(2); } // slots for the unused codes 0 and 1

  int num_vars() const { return n_vars_; }

  void ensure_var(int v) {
    while (n_vars_ < v) {
      ++n_vars_;
      assigns_.push_back(0);
      phase_.push_back(0);
      level_.push_back(0);
      reason_.push_back(-1);
      activity_.push_back(0.0);
      seen_.push_back(0);
      occurs_.push_back(0);
      watches_.emplace_back();
      watches_.emplace_back();
      heap_insert(n_vars_);
    }
  }

  bool okay() const { return ok_; }
  bool occurs(int v) const { return v >= 1 && v <= n_vars_ && occurs_[v - 1]; }
  const Stats& stats() const { return stats_; }

  // lits: nonzero DIMACS-style ints. Returns false if the database is now
  // trivially unsat (empty clause at root level).
  bool add_clause(const std::vector<int>& lits) {
    if (!ok_) return false;
    if (decision_level() > 0) cancel_until(0);
    std::vector<uint32_t> c;
    c.reserve(lits.size());
    for (int d : lits) {
      assert(d != 0);
      int v = d > 0 ? d : -d;
      ensure_var(v);
      occurs_[v - 1] = 1;
      c.push_back(enc(v, d < 0));
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    std::vector<uint32_t> out;
    bool taut = false;
    for (size_t i = 0; i < c.size(); ++i) {
      if (i + 1 < c.size() && (c[i] ^ 1u) == c[i + 1]) { taut = true; break; }
      int8_t val = lit_value(c[i]);
      if (val > 0 && level_of(c[i]) == 0) { taut = true; break; }
      if (val < 0 && level_of(c[i]) == 0) continue; // false at root: drop
      out.push_back(c[i]);
    }
    if (taut) return true;
    if (out.empty()) { ok_ = false; return false; }
    if (out.size() == 1) {
      if (lit_value(out[0]) < 0) { ok_ = false; return false; }
      if (lit_value(out[0]) == 0) {
        unchecked_enqueue(out[0], -1);
        if (propagate() != -1) { ok_ = false; return false; }
      }
      return true;
    }
    attach(add_clause_db(std::move(out), false));
    return true;
  }

  enum class Result { Sat, Unsat };

  Result solve() {
    ++stats_.solves;
    if (!ok_) return Result::Unsat;
    cancel_until(0);
    if (propagate() != -1) { ok_ = false; return Result::Unsat; }
    int restart_len = opts.restart_base;
    uint64_t conflicts_this = 0;
    int luby_i = 1;
    for (;;) {
      int confl = propagate();
      if (confl != -1) {
        ++stats_.conflicts;
        ++conflicts_this;
        if (decision_level() == 0) { ok_ = false; return Result::Unsat; }
        std::vector<uint32_t> learnt;
        int bt = analyze(confl, learnt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          unchecked_enqueue(learnt[0], -1);
        } else {
          int ci = add_clause_db(std::move(learnt), true);
          attach(ci);
          bump_clause(ci);
          unchecked_enqueue(clauses_[ci].lits[0], ci);
        }
        decay_activities();
        if (static_cast<int>(n_learnts_) > learnt_limit_) reduce_db();
      } else {
        if (opts.restarts && conflicts_this >= static_cast<uint64_t>(restart_len)) {
          conflicts_this = 0;
          restart_len = opts.restart_base * luby(2, luby_i++);
          cancel_until(0);
          continue;
        }
        int next = pick_branch_var();
        if (next == 0) { save_model(); return Result::Sat; }
        ++stats_.decisions;
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        unchecked_enqueue(enc(next, phase_[next - 1] == 0), -1);
      }
    }
  }

  // Value of var in the last SAT model (false for vars created after it).
  bool model_value(int v) const {
    if (v < 1 || v > static_cast<int>(model_.size())) return false;
    return model_[v - 1] > 0;
  }

private:
  struct Clause {
    std::vector<uint32_t> lits;
    double act = 0.0;
    bool learnt = false;
    bool deleted = false;
  };
  struct Watcher {
    int cref;
    uint32_t blocker;
  };

  static uint32_t enc(int v, bool neg) { return 2u * static_cast<uint32_t>(v) + (neg ? 1u : 0u); }
  static int lit_var(uint32_t l) { return static_cast<int>(l >> 1); }

  int8_t var_value(int v) const { return assigns_[v - 1]; }
  int8_t lit_value(uint32_t l) const {
    int8_t a = assigns_[lit_var(l) - 1];
    return (l & 1u) ? static_cast<int8_t>(-a) : a;
  }
  int level_of(uint32_t l) const { return level_[lit_var(l) - 1]; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  int add_clause_db(std::vector<uint32_t> lits, bool learnt) {
    int idx;
    if (!free_slots_.empty()) {
      idx = free_slots_.back();
      free_slots_.pop_back();
      clauses_[idx] = Clause{std::move(lits), 0.0, learnt, false};
    } else {
      idx = static_cast<int>(clauses_.size());
      clauses_.push_back(Clause{std::move(lits), 0.0, learnt, false});
    }
    if (learnt) ++n_learnts_;
    return idx;
  }

  void attach(int ci) {
    const auto& c = clauses_[ci].lits;
    assert(c.size() >= 2);
    watches_[c[0] ^ 1u].push_back({ci, c[1]});
    watches_[c[1] ^ 1u].push_back({ci, c[0]});
  }

  void detach(int ci) {
    for (uint32_t w : {clauses_[ci].lits[0] ^ 1u, clauses_[ci].lits[1] ^ 1u}) {
      auto& ws = watches_[w];
      for (size_t i = 0; i < ws.size(); ++i)
        if (ws[i].cref == ci) { ws[i] = ws.back(); ws.pop_back(); break; }
    }
  }

  void unchecked_enqueue(uint32_t l, int reason) {
    int v = lit_var(l);
    assigns_[v - 1] = (l & 1u) ? -1 : 1;
    level_[v - 1] = decision_level();
    reason_[v - 1] = reason;
    trail_.push_back(l);
  }

  int propagate() {
    while (qhead_ < trail_.size()) {
      uint32_t p = trail_[qhead_++];
      ++stats_.propagations;
      auto& ws = watches_[p];
      size_t i = 0, j = 0;
      int confl = -1;
      while (i < ws.size()) {
        Watcher w = ws[i];
        if (lit_value(w.blocker) > 0) { ws[j++] = ws[i++]; continue; }
        auto& c = clauses_[w.cref].lits;
        uint32_t false_lit = p ^ 1u;
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        uint32_t first = c[0];
        if (first != w.blocker && lit_value(first) > 0) {
          ws[j++] = {w.cref, first};
          ++i;
          continue;
        }
        bool moved = false;
        for (size_t k = 2; k < c.size(); ++k) {
          if (lit_value(c[k]) >= 0) {
            std::swap(c[1], c[k]);
            watches_[c[1] ^ 1u].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) { ++i; continue; }
        // unit or conflict
        ws[j++] = {w.cref, first};
        ++i;
        if (lit_value(first) < 0) {
          confl = w.cref;
          qhead_ = trail_.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          unchecked_enqueue(first, w.cref);
        }
      }
      ws.resize(j);
      if (confl != -1) return confl;
    }
    return -1;
  }

  int analyze(int confl, std::vector<uint32_t>& out_learnt) {
    out_learnt.push_back(0); // slot for the asserting literal
    int path = 0;
    uint32_t p = 0;
    size_t index = trail_.size();
    bool first_round = true;
    do {
      auto& c = clauses_[confl];
      if (c.learnt) bump_clause(confl);
      for (size_t k = first_round ? 0 : 1; k < c.lits.size(); ++k) {
        uint32_t q = c.lits[k];
        int v = lit_var(q);
        if (!seen_[v - 1] && level_[v - 1] > 0) {
          seen_[v - 1] = 1;
          bump_var(v);
          if (level_[v - 1] >= decision_level())
            ++path;
          else
            out_learnt.push_back(q);
        }
      }
      while (!seen_[lit_var(trail_[index - 1]) - 1]) --index;
      p = trail_[--index];
      confl = reason_[lit_var(p) - 1];
      seen_[lit_var(p) - 1] = 0;
      --path;
      first_round = false;
    } while (path > 0);
    out_learnt[0] = p ^ 1u;

    // local minimization: drop lits whose reason is covered by the clause
    std::vector<uint32_t> to_clear(out_learnt.begin() + 1, out_learnt.end());
    std::vector<uint32_t> kept;
    kept.push_back(out_learnt[0]);
    for (size_t k = 1; k < out_learnt.size(); ++k)
      if (!redundant(out_learnt[k])) kept.push_back(out_learnt[k]);
    out_learnt.swap(kept);
    for (uint32_t l : to_clear) seen_[lit_var(l) - 1] = 0;

    int bt = 0;
    if (out_learnt.size() > 1) {
      size_t max_i = 1;
      for (size_t k = 2; k < out_learnt.size(); ++k)
        if (level_of(out_learnt[k]) > level_of(out_learnt[max_i])) max_i = k;
      std::swap(out_learnt[1], out_learnt[max_i]);
      bt = level_of(out_learnt[1]);
    }
    return bt;
  }

  bool redundant(uint32_t q) {
    int r = reason_[lit_var(q) - 1];
    if (r == -1) return false;
    for (size_t k = 1; k < clauses_[r].lits.size(); ++k) {
      uint32_t l = clauses_[r].lits[k];
      int v = lit_var(l);
      if (!seen_[v - 1] && level_[v - 1] > 0) return false;
    }
    return true;
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    int bound = trail_lim_[lvl];
    for (int i = static_cast<int>(trail_.size()) - 1; i >= bound; --i) {
      int v = lit_var(trail_[i]);
      phase_[v - 1] = assigns_[v - 1] > 0 ? 1 : 0;
      assigns_[v - 1] = 0;
      reason_[v - 1] = -1;
      heap_insert(v);
    }
    trail_.resize(bound);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
  }

  int pick_branch_var() {
    while (!heap_.empty()) {
      int v = heap_top();
      if (var_value(v) == 0) return v;
      heap_pop();
    }
    return 0;
  }

  void save_model() {
    model_.assign(assigns_.begin(), assigns_.end());
  }

  // ---- VSIDS ----
  void bump_var(int v) {
    activity_[v - 1] += var_inc_;
    if (activity_[v - 1] > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    heap_update(v);
  }
  void bump_clause(int ci) {
    clauses_[ci].act += cla_inc_;
    if (clauses_[ci].act > 1e20) {
      for (auto& c : clauses_)
        if (c.learnt) c.act *= 1e-20;
      cla_inc_ *= 1e-20;
    }
  }
  void decay_activities() {
    var_inc_ /= 0.95;
    cla_inc_ /= 0.999;
  }

  void reduce_db() {
    std::vector<int> learnts;
    for (int i = 0; i < static_cast<int>(clauses_.size()); ++i)
      if (clauses_[i].learnt && !clauses_[i].deleted) learnts.push_back(i);
    std::sort(learnts.begin(), learnts.end(), [&](int a, int b) {
      return clauses_[a].act < clauses_[b].act;
    });
    size_t target = learnts.size() / 2;
    for (size_t i = 0; i < target; ++i) {
      int ci = learnts[i];
      if (clauses_[ci].lits.size() <= 2) continue;
      if (locked(ci)) continue;
      detach(ci);
      clauses_[ci].deleted = true;
      clauses_[ci].lits.clear();
      clauses_[ci].lits.shrink_to_fit();
      free_slots_.push_back(ci);
      --n_learnts_;
    }
    learnt_limit_ += 512;
  }

  bool locked(int ci) const {
    uint32_t l = clauses_[ci].lits[0];
    return lit_value(l) > 0 && reason_[lit_var(l) - 1] == ci;
  }

  static int luby(int y, int x) {
    int size = 1, seq = 0;
    while (size < x + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    while (size - 1 != x) {
      size = (size - 1) >> 1;
      --seq;
      x = x % size;
    }
    int r = 1;
    for (int i = 0; i < seq; ++i) r *= y;
    return r;
  }

  // ---- indexed max-heap on activity, ties to smaller var ----
  bool heap_less(int a, int b) const {
    if (activity_[a - 1] != activity_[b - 1]) return activity_[a - 1] > activity_[b - 1];
    return a < b;
  }
  void heap_insert(int v) {
    if (static_cast<int>(heap_pos_.size()) < n_vars_ + 1) heap_pos_.resize(n_vars_ + 1, -1);
    if (heap_pos_[v] != -1) return;
    heap_.push_back(v);
    heap_pos_[v] = static_cast<int>(heap_.size()) - 1;
    heap_up(heap_pos_[v]);
  }
  int heap_top() const { return heap_[0]; }
  void heap_pop() {
    int v = heap_[0];
    heap_pos_[v] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_pos_[heap_[0]] = 0;
      heap_down(0);
    }
  }
  void heap_update(int v) {
    if (heap_pos_[v] != -1) {
      heap_up(heap_pos_[v]);
      heap_down(heap_pos_[v]);
    }
  }
  void heap_up(int i) {
    int v = heap_[i];
    while (i > 0) {
      int p = (i - 1) >> 1;
      if (!heap_less(v, heap_[p])) break;
      heap_[i] = heap_[p];
      heap_pos_[heap_[i]] = i;
      i = p;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }
  void heap_down(int i) {
    int v = heap_[i];
    int n = static_cast<int>(heap_.size());
    for (;;) {
      int c = 2 * i + 1;
      if (c >= n) break;
      if (c + 1 < n && heap_less(heap_[c + 1], heap_[c])) ++c;
      if (!heap_less(heap_[c], v)) break;
      heap_[i] = heap_[c];
      heap_pos_[heap_[i]] = i;
      i = c;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }

  int n_vars_ = 0;
  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<int> free_slots_;
  size_t n_learnts_ = 0;
  int learnt_limit_ = 4096;
  std::vector<std::vector<Watcher>> watches_; // indexed by lit code (slots 0,1 unused)
  std::vector<int8_t> assigns_;
  std::vector<uint8_t> phase_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<double> activity_;
  std::vector<uint8_t> seen_;
  std::vector<uint8_t> occurs_;
  std::vector<uint32_t> trail_;
  std::vector<int> trail_lim_;
  size_t qhead_ = 0;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<int8_t> model_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  Stats stats_;
};

} // namespace equi
