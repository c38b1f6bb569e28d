#include <doctest.h>

#include <random>
#include <sstream>

#include "equi/compile.hpp"
#include "equi/dimacs.hpp"
#include "gen.hpp"
#include "oracle.hpp"

using namespace equi;

TEST_CASE("surviving free integers get monotonicity chains") {
  CompileResult r = compile_text("new_int(x, 0, 3)\n", Options{});
  CHECK(r.cnf.clauses.size() == 2); // (x1 | ~x2), (x2 | ~x3)
  CHECK(r.cnf.num_vars == 3);
}

TEST_CASE("int_leq projects to the order relation") {
  CompileResult r = compile_text(
      "new_int(x, 0, 3)\nnew_int(y, 0, 3)\nint_leq(x, y)\n", Options{});
  auto want = oracle::brute_solutions(r.source);
  auto got = oracle::cnf_projected_solutions(r);
  CHECK(want == got);
  CHECK(want.size() == 10);
}

TEST_CASE("xor encodes as parity chain or one extended line") {
  std::string text = "new_bool(a)\nnew_bool(b)\nnew_bool(c)\nbool_array_xor([a, b, c])\n";
  { // plain: one Tseitin step (4 clauses) plus the closing pair
    CompileResult r = compile_text(text, Options{});
    CHECK(r.cnf.clauses.size() == 6);
    CHECK(r.cnf.xor_clauses.empty());
    auto want = oracle::brute_solutions(r.source);
    CHECK(want == oracle::cnf_projected_solutions(r));
  }
  {
    Options opts;
    opts.xor_mode = true;
    CompileResult r = compile_text(text, opts);
    CHECK(r.cnf.clauses.empty());
    CHECK(r.cnf.xor_clauses.size() == 1);
    CHECK(r.cnf.xor_clauses[0].size() == 3);
    auto want = oracle::brute_solutions(r.source);
    CHECK(want == oracle::cnf_projected_solutions(r));
    // the xor line is counted in the header
    std::string d = dimacs_string(r.cnf);
    CHECK(d.find("x ") != std::string::npos);
  }
}

TEST_CASE("compile-time unsat emits the canonical unsat document") {
  CompileResult r = compile_text("new_int(x, 0, 3)\nint_geq(x, 9)\n", Options{});
  CHECK(r.cnf.unsat);
  std::string d = dimacs_string(r.cnf);
  CHECK(d.substr(d.size() - 3) == "\n0\n");
}

TEST_CASE("deterministic output: identical input gives identical bytes") {
  std::string text =
      "new_int(x, 0, 5)\nnew_int(y, 0, 5)\nnew_bool(p)\n"
      "int_plus(x, y, 7)\nbool_array_or([p, -p])\n"
      "bool_array_sum_leq([p, p, -p], 2)\n";
  Options opts;
  CompileResult a = compile_text(text, opts);
  CompileResult b = compile_text(text, opts);
  CHECK(dimacs_string(a.cnf) == dimacs_string(b.cnf));
  std::ostringstream va, vb;
  write_varmap(a.varmap, va);
  write_varmap(b.varmap, vb);
  CHECK(va.str() == vb.str());
}

TEST_CASE("varmap round-trips and decodes fixed integers as constants") {
  CompileResult r = compile_text(
      "new_int(x, 0, 5)\nnew_int(y, 0, 5)\nnew_bool(p)\n"
      "int_eq(x, 3)\nbool_eq(p, false)\n",
      Options{});
  std::ostringstream os;
  write_varmap(r.varmap, os);
  std::string text = os.str();
  CHECK(text.find("int x const 3") != std::string::npos);
  CHECK(text.find("bool p const false") != std::string::npos);
  std::istringstream is(text);
  VarMap back = read_varmap(is);
  REQUIRE(back.entries.size() == 3);
  CHECK(decode_int(back.entries[0], [](int) { return false; }) == 3);
}

TEST_CASE("aliased booleans decode through their representative") {
  CompileResult r = compile_text(
      "new_bool(p)\nnew_bool(q)\nbool_eq(p, -q)\nbool_array_or([p, q])\n", Options{});
  std::ostringstream os;
  write_varmap(r.varmap, os);
  // one of the two must be an alias of the other's negation
  CHECK(os.str().find("alias -") != std::string::npos);
}

TEST_CASE("per-template randomized soundness against the brute-force oracle") {
  std::mt19937 rng(555);
  for (const auto& row : gen::table1_rows()) {
    for (int trial = 0; trial < 12; ++trial) {
      std::string text = gen::instance(row, rng);
      CAPTURE(text);
      SourceModel src = parse_model(text);
      auto want = oracle::brute_solutions(src);
      Options opts;
      opts.card = trial % 3 == 0   ? CardStrategy::Adder
                  : trial % 3 == 1 ? CardStrategy::Merger
                                   : CardStrategy::Hybrid;
      CompileResult r = compile_model(src, opts);
      if (r.cnf.unsat) {
        CHECK(want.empty());
        continue;
      }
      auto got = oracle::cnf_projected_solutions(r);
      CHECK(want == got);
    }
  }
}

TEST_CASE("every full CNF model decodes integers monotonically") {
  std::string text =
      "new_int(x, 0, 4)\nnew_int(y, 1, 3)\n"
      "int_neq(x, 2)\nint_leq(y, x)\n";
  CompileResult r = compile_text(text, Options{});
  REQUIRE_FALSE(r.cnf.unsat);
  Solver s;
  s.ensure_var(r.cnf.num_vars);
  for (const auto& c : r.cnf.clauses) s.add_clause(c);
  int models = 0;
  while (s.solve() == Solver::Result::Sat) {
    ++models;
    REQUIRE(models < 200);
    for (const auto& e : r.varmap.entries) {
      if (e.kind != DeclKind::Int) continue;
      bool seen_false = false;
      for (const auto& b : e.bits) {
        bool val = b.dimacs == 0 ? b.value
                   : b.dimacs > 0 ? s.model_value(b.dimacs)
                                  : !s.model_value(-b.dimacs);
        if (!val) seen_false = true;
        else REQUIRE_FALSE(seen_false); // no true bit after a false one
      }
    }
    std::vector<int> block;
    for (int v = 1; v <= r.cnf.num_vars; ++v)
      block.push_back(s.model_value(v) ? -v : v);
    if (!s.add_clause(block)) break;
  }
  CHECK(models > 0);
}

TEST_CASE("mixed multi-constraint models stay faithful to brute force") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 120; ++trial) {
    std::string text = gen::mixed_instance(gen::table1_rows(), rng, 2 + trial % 2);
    CAPTURE(text);
    SourceModel src = parse_model(text);
    auto want = oracle::brute_solutions(src);
    Options opts;
    opts.card = trial % 3 == 0   ? CardStrategy::Adder
                : trial % 3 == 1 ? CardStrategy::Merger
                                 : CardStrategy::Hybrid;
    opts.onesided_comparators = trial % 5 == 0;
    CompileResult r = compile_model(src, opts);
    if (r.cnf.unsat) {
      CHECK(want.empty());
      continue;
    }
    auto got = oracle::cnf_projected_solutions(r);
    CHECK(want == got);
  }
}
