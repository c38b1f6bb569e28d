#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "equi/solver.hpp"

using namespace equi;

namespace {

// exhaustive truth-table check
bool tt_satisfiable(int n, const std::vector<std::vector<int>>& cnf) {
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& c : cnf) {
      bool sat = false;
      for (int l : c) {
        int v = l > 0 ? l : -l;
        bool val = (mask >> (v - 1)) & 1;
        if ((l > 0) == val) { sat = true; break; }
      }
      if (!sat) { ok = false; break; }
    }
    if (ok) return true;
  }
  return false;
}

uint64_t tt_count(int n, const std::vector<std::vector<int>>& cnf) {
  uint64_t cnt = 0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& c : cnf) {
      bool sat = false;
      for (int l : c) {
        int v = l > 0 ? l : -l;
        bool val = (mask >> (v - 1)) & 1;
        if ((l > 0) == val) { sat = true; break; }
      }
      if (!sat) { ok = false; break; }
    }
    if (ok) ++cnt;
  }
  return cnt;
}

} // namespace

TEST_CASE("direct contradiction and simple sat") {
  Solver s;
  s.add_clause({1});
  s.add_clause({-1});
  CHECK(s.solve() == Solver::Result::Unsat);

  Solver s2;
  s2.add_clause({1, 2});
  CHECK(s2.solve() == Solver::Result::Sat);
  CHECK((s2.model_value(1) || s2.model_value(2)));
}

TEST_CASE("empty database is satisfiable") {
  Solver s;
  CHECK(s.solve() == Solver::Result::Sat);
}

TEST_CASE("pigeonhole php(4,3) is unsat") {
  // pigeon p in hole h: var 3*(p-1)+h, p=1..4, h=1..3
  Solver s;
  auto v = [](int p, int h) { return 3 * (p - 1) + h; };
  for (int p = 1; p <= 4; ++p) s.add_clause({v(p, 1), v(p, 2), v(p, 3)});
  for (int h = 1; h <= 3; ++h)
    for (int p1 = 1; p1 <= 4; ++p1)
      for (int p2 = p1 + 1; p2 <= 4; ++p2) s.add_clause({-v(p1, h), -v(p2, h)});
  CHECK(s.solve() == Solver::Result::Unsat);
}

TEST_CASE("random 3-cnf verdicts match the truth table") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 3 + static_cast<int>(rng() % 13); // up to 15 vars
    int m = 2 + static_cast<int>(rng() % (3 * n));
    std::vector<std::vector<int>> cnf;
    for (int i = 0; i < m; ++i) {
      std::vector<int> c;
      for (int k = 0; k < 3; ++k) {
        int v = 1 + static_cast<int>(rng() % n);
        c.push_back(rng() % 2 ? v : -v);
      }
      cnf.push_back(c);
    }
    Solver s;
    s.ensure_var(n);
    bool trivially_unsat = false;
    for (auto& c : cnf)
      if (!s.add_clause(c)) trivially_unsat = true;
    bool expect = tt_satisfiable(n, cnf);
    if (trivially_unsat) {
      CHECK_FALSE(expect);
      continue;
    }
    auto got = s.solve();
    CHECK((got == Solver::Result::Sat) == expect);
    if (got == Solver::Result::Sat) {
      // model satisfies every clause
      for (const auto& c : cnf) {
        bool sat = false;
        for (int l : c)
          if (s.model_value(l > 0 ? l : -l) == (l > 0)) { sat = true; break; }
        CHECK(sat);
      }
    }
  }
}

TEST_CASE("incremental blocking enumerates exactly the model count") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3); // up to 4 vars
    int m = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<int>> cnf;
    for (int i = 0; i < m; ++i) {
      std::vector<int> c;
      int len = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < len; ++k) {
        int v = 1 + static_cast<int>(rng() % n);
        c.push_back(rng() % 2 ? v : -v);
      }
      cnf.push_back(c);
    }
    Solver s;
    s.ensure_var(n);
    bool root_unsat = false;
    for (auto& c : cnf)
      if (!s.add_clause(c)) root_unsat = true;
    uint64_t expect = tt_count(n, cnf);
    uint64_t found = 0;
    if (!root_unsat) {
      while (s.solve() == Solver::Result::Sat) {
        ++found;
        REQUIRE(found <= expect); // guards against loops
        std::vector<int> block;
        for (int v = 1; v <= n; ++v) block.push_back(s.model_value(v) ? -v : v);
        if (!s.add_clause(block)) break;
      }
    }
    CHECK(found == expect);
  }
}

TEST_CASE("clauses added after solve persist") {
  Solver s;
  s.add_clause({1, 2});
  CHECK(s.solve() == Solver::Result::Sat);
  s.add_clause({-1});
  CHECK(s.solve() == Solver::Result::Sat);
  CHECK(s.model_value(2));
  s.add_clause({-2});
  CHECK(s.solve() == Solver::Result::Unsat);
}

TEST_CASE("determinism: identical call sequences give identical models") {
  auto run = [] {
    Solver s;
    s.add_clause({1, 2, 3});
    s.add_clause({-1, 4});
    s.add_clause({-2, -4});
    s.solve();
    std::vector<bool> m;
    for (int v = 1; v <= 4; ++v) m.push_back(s.model_value(v));
    return m;
  };
  CHECK(run() == run());
}

TEST_CASE("occurs query distinguishes constrained variables") {
  Solver s;
  s.ensure_var(5);
  s.add_clause({1, -3});
  CHECK(s.occurs(1));
  CHECK(s.occurs(3));
  CHECK_FALSE(s.occurs(2));
  CHECK_FALSE(s.occurs(5));
}
