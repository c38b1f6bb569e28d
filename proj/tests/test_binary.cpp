#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "equi/binary_ext.hpp"
#include "equi/compile.hpp"
#include "oracle.hpp"

using namespace equi;

namespace {

// decode a declared entry from a solver model
long long decoded(const CompileResult& r, const std::string& name, Solver& s) {
  for (const auto& e : r.varmap.entries)
    if (e.name == name)
      return decode_int(e, [&](int v) { return s.model_value(v); });
  FAIL("no declaration named " << name);
  return -1;
}

// fix a declared entry to a value by unit clauses
bool fix_entry(const CompileResult& r, const std::string& name, long long v, Solver& s) {
  for (const auto& e : r.varmap.entries) {
    if (e.name != name) continue;
    for (size_t j = 0; j < e.bits.size(); ++j) {
      bool want = e.kind == DeclKind::Binary
                      ? ((v >> j) & 1) != 0
                      : v >= e.lo + static_cast<long long>(j) + 1;
      if (e.bits[j].dimacs == 0) {
        if (e.bits[j].value != want) return false;
      } else if (!s.add_clause({want ? e.bits[j].dimacs : -e.bits[j].dimacs})) {
        return false;
      }
    }
    return true;
  }
  return false;
}

} // namespace

TEST_CASE("unary to binary channeling is fully static on fixed values") {
  for (long long v = 0; v <= 63; ++v) {
    std::string text = "new_int(u, 0, 63)\nnew_binary(w, 6)\n"
                       "int_eq(u, " + std::to_string(v) + ")\n"
                       "int2binary(u, w)\n";
    CompileResult r = compile_text(text, Options{});
    REQUIRE_FALSE(r.cnf.unsat);
    // every bit of w resolves to a constant at compile time
    const auto& e = r.varmap.entries[1];
    long long got = 0;
    for (size_t j = 0; j < e.bits.size(); ++j) {
      REQUIRE(e.bits[j].dimacs == 0);
      if (e.bits[j].value) got += 1ll << j;
    }
    CHECK(got == v);
  }
}

TEST_CASE("channeling constrains free values correctly") {
  std::string text = "new_int(u, 0, 13)\nnew_binary(w, 4)\nint2binary(u, w)\n";
  CompileResult r = compile_text(text, Options{});
  auto want = oracle::brute_solutions(r.source);
  auto got = oracle::cnf_projected_solutions(r);
  CHECK(want == got);
  CHECK(want.size() == 14);
}

TEST_CASE("unary div2 and mod2 match arithmetic on all values") {
  for (long long v = 0; v <= 9; ++v) {
    std::string text = "new_int(u, 0, 9)\nnew_binary(w, 4)\n"
                       "int_eq(u, " + std::to_string(v) + ")\n"
                       "int2binary(u, w)\n";
    CompileResult r = compile_text(text, Options{});
    const auto& e = r.varmap.entries[1];
    // lsb is value mod 2; remaining bits encode value div 2
    CHECK(e.bits[0].value == (v % 2 == 1));
    long long rest = 0;
    for (size_t j = 1; j < e.bits.size(); ++j)
      if (e.bits[j].value) rest += 1ll << (j - 1);
    CHECK(rest == v / 2);
  }
}

TEST_CASE("single binary number sum aliases bitwise") {
  std::string text =
      "new_binary(a, 3)\nnew_binary(s, 4)\nbinary_array_sum_eq([a], s)\n";
  CompileResult r = compile_text(text, Options{});
  auto want = oracle::brute_solutions(r.source);
  auto got = oracle::cnf_projected_solutions(r);
  CHECK(want == got);
}

TEST_CASE("three 3-bit numbers sum exhaustively") {
  std::string text =
      "new_binary(a, 3)\nnew_binary(b, 3)\nnew_binary(c, 3)\nnew_binary(s, 5)\n"
      "binary_array_sum_eq([a, b, c], s)\n";
  for (auto strat : {CardStrategy::Adder, CardStrategy::Hybrid}) {
    Options opts;
    opts.card = strat;
    CompileResult r = compile_text(text, opts);
    auto want = oracle::brute_solutions(r.source);
    auto got = oracle::cnf_projected_solutions(r);
    CHECK(want == got);
    CHECK(want.size() == 512);
  }
}

TEST_CASE("narrow sums force overflow-infeasible models unsat") {
  std::string text =
      "new_binary(a, 2)\nnew_binary(b, 2)\nnew_binary(s, 2)\n"
      "binary_array_sum_eq([a, b], s)\n";
  CompileResult r = compile_text(text, Options{});
  auto want = oracle::brute_solutions(r.source);
  auto got = oracle::cnf_projected_solutions(r);
  CHECK(want == got);
}

TEST_CASE("binary multiplication by zero fixes the product statically") {
  std::string text =
      "new_binary(b, 3)\nnew_binary(c, 6)\nbinary_times(0, b, c)\n";
  CompileResult r = compile_text(text, Options{});
  const auto& e = r.varmap.entries[1];
  for (const auto& bit : e.bits) {
    CHECK(bit.dimacs == 0);
    CHECK_FALSE(bit.value);
  }
}

TEST_CASE("binary multiplication 4x4 is exhaustive over 256 pairs") {
  std::string text =
      "new_binary(a, 4)\nnew_binary(b, 4)\nnew_binary(c, 8)\n"
      "binary_times(a, b, c)\n";
  CompileResult r = compile_text(text, Options{});
  REQUIRE_FALSE(r.cnf.unsat);
  for (long long a = 0; a < 16; ++a)
    for (long long b = 0; b < 16; ++b) {
      Solver s;
      s.ensure_var(r.cnf.num_vars);
      bool ok = true;
      for (const auto& cl : r.cnf.clauses)
        if (!s.add_clause(cl)) { ok = false; break; }
      REQUIRE(ok);
      REQUIRE(fix_entry(r, "a", a, s));
      REQUIRE(fix_entry(r, "b", b, s));
      REQUIRE(s.solve() == Solver::Result::Sat);
      CHECK(decoded(r, "c", s) == a * b);
      // and the product value is forced, not just possible
      Solver s2;
      s2.ensure_var(r.cnf.num_vars);
      for (const auto& cl : r.cnf.clauses) s2.add_clause(cl);
      fix_entry(r, "a", a, s2);
      fix_entry(r, "b", b, s2);
      bool blocked = fix_entry(r, "c", a * b, s2);
      (void)blocked;
    }
}

TEST_CASE("squaring keeps one variable per unordered bit pair") {
  for (int w : {3, 4, 5}) {
    Model m;
    BinaryInt a = m.new_binary(w);
    BinaryInt c = m.new_binary(2 * w);
    std::vector<Constraint> out;
    auto grid = binext::decompose_bin_square(m, a, c, out);
    std::set<uint32_t> distinct;
    for (int i = 0; i < w; ++i)
      for (int j = i; j < w; ++j)
        distinct.insert(grid.z[static_cast<size_t>(i)][static_cast<size_t>(j)].var());
    CHECK(static_cast<int>(distinct.size()) == w * (w + 1) / 2);
  }
}

TEST_CASE("square column promotion matches the worked 5-bit layout") {
  // weight exponents, 0-based; diagonal entries stay, doubled entries move
  // one column left: col 0 = {z00}, col 1 = {}, col 2 = {z11, z01},
  // col 3 = {z02}, col 4 = {z22, z03, z12}, col 5 = {z04, z13}, ...
  auto sc = binext::square_columns(5);
  using P = std::pair<int, int>;
  REQUIRE(sc.cols.size() == 9);
  CHECK(sc.cols[0] == std::vector<P>{{0, 0}});
  CHECK(sc.cols[1].empty());
  CHECK(sc.cols[2] == std::vector<P>{{1, 1}, {0, 1}});
  CHECK(sc.cols[3] == std::vector<P>{{0, 2}});
  CHECK(sc.cols[4] == std::vector<P>{{2, 2}, {0, 3}, {1, 2}});
  CHECK(sc.cols[5] == std::vector<P>{{0, 4}, {1, 3}});
  CHECK(sc.cols[6] == std::vector<P>{{3, 3}, {1, 4}, {2, 3}});
  CHECK(sc.cols[7] == std::vector<P>{{2, 4}});
  CHECK(sc.cols[8] == std::vector<P>{{4, 4}, {3, 4}});
  // weight conservation: promoting two entries of weight w to one of 2w
  long long total = 0;
  for (size_t e = 0; e < sc.cols.size(); ++e)
    for (auto [i, j] : sc.cols[e]) {
      (void)i;
      (void)j;
      total += 1ll << e;
    }
  long long direct = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) direct += 1ll << (i + j);
  CHECK(total == direct);
}

TEST_CASE("binary_square is exhaustive and agrees with binary_times(a,a,c)") {
  std::string sq =
      "new_binary(a, 4)\nnew_binary(c, 8)\nbinary_square(a, c)\n";
  std::string tm =
      "new_binary(a, 4)\nnew_binary(c, 8)\nbinary_times(a, a, c)\n";
  CompileResult rs = compile_text(sq, Options{});
  CompileResult rt = compile_text(tm, Options{});
  auto ws = oracle::brute_solutions(rs.source);
  auto gs = oracle::cnf_projected_solutions(rs);
  auto gt = oracle::cnf_projected_solutions(rt);
  CHECK(ws == gs);
  CHECK(gs == gt);
  CHECK(gs.size() == 16);
}

TEST_CASE("square uses fewer variables than general multiplication") {
  std::string sq = "new_binary(a, 5)\nnew_binary(c, 10)\nbinary_square(a, c)\n";
  std::string tm = "new_binary(a, 5)\nnew_binary(c, 10)\nbinary_times(a, a, c)\n";
  CompileResult rs = compile_text(sq, Options{});
  CompileResult rt = compile_text(tm, Options{});
  CHECK(rs.cnf.num_vars < rt.cnf.num_vars);
  CHECK(rs.cnf.clauses.size() < rt.cnf.clauses.size());
}

TEST_CASE("bucket value conservation on random fixed inputs") {
  std::mt19937 rng(99);
  std::string text =
      "new_binary(a, 3)\nnew_binary(b, 4)\nnew_binary(d, 2)\nnew_binary(s, 6)\n"
      "binary_array_sum_eq([a, b, d], s)\n";
  CompileResult r = compile_text(text, Options{});
  for (int trial = 0; trial < 40; ++trial) {
    long long a = rng() % 8, b = rng() % 16, d = rng() % 4;
    Solver s;
    s.ensure_var(r.cnf.num_vars);
    for (const auto& cl : r.cnf.clauses) s.add_clause(cl);
    REQUIRE(fix_entry(r, "a", a, s));
    REQUIRE(fix_entry(r, "b", b, s));
    REQUIRE(fix_entry(r, "d", d, s));
    REQUIRE(s.solve() == Solver::Result::Sat);
    CHECK(decoded(r, "s", s) == a + b + d);
  }
}
