#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "equi/compile.hpp"
#include "oracle.hpp"

using namespace equi;

TEST_CASE("int_plus with fixed sum leaves zero clauses and mirror equivalences") {
  // A + B = 5 with A,B in [0,5]: b_i = ~a_{6-i}, constraint gone
  auto src = parse_model(
      "new_int(a, 0, 5)\n"
      "new_int(b, 0, 5)\n"
      "int_plus(a, b, 5)\n");
  Model m = lower(src);
  Options opts;
  simplify(m, opts);
  REQUIRE(m.status() == ModelStatus::Open);
  CHECK_FALSE(m.constraints[0].alive);
  const UnaryInt &a = m.decls[0].num, &b = m.decls[1].num;
  for (int i = 1; i <= 5; ++i)
    CHECK(m.store.resolve(b.geq_lit(i)) == ~m.store.resolve(a.geq_lit(6 - i)));
  Encoder enc(m, opts);
  enc.run();
  CHECK(enc.doc.clauses.size() - enc.stats.domain_clauses == 0);
}

TEST_CASE("int_plus bound rules fire in both directions") {
  // X>=2, Y>=3 propagate Z>=5; Z<9, X>=2 propagate Y<7
  auto src = parse_model(
      "new_int(x, 0, 5)\n"
      "new_int(y, 0, 8)\n"
      "new_int(z, 0, 10)\n"
      "int_geq(x, 2)\n"
      "int_geq(y, 3)\n"
      "int_lt(z, 9)\n"
      "int_plus(x, y, z)\n");
  Model m = lower(src);
  simplify(m, Options{});
  CHECK(m.cur_lo(m.decls[2].num) == 5);
  CHECK(m.cur_hi(m.decls[1].num) == 6);
}

TEST_CASE("int_plus with a zero operand aliases the other side") {
  auto src = parse_model(
      "new_int(x, 0, 4)\n"
      "new_int(z, 0, 4)\n"
      "int_plus(x, 0, z)\n");
  Model m = lower(src);
  simplify(m, Options{});
  CHECK_FALSE(m.constraints[0].alive);
  for (int v = 1; v <= 4; ++v)
    CHECK(m.store.same_class(m.decls[0].num.geq_lit(v), m.decls[1].num.geq_lit(v)));
}

TEST_CASE("unit conjunction binds and disappears") {
  auto src = parse_model("new_bool(x)\nbool_array_and([x])\n");
  Model m = lower(src);
  simplify(m, Options{});
  CHECK_FALSE(m.constraints[0].alive);
  CHECK(m.store.resolve(m.decls[0].lit) == Lit::t());
}

TEST_CASE("int_leq against a fixed bound becomes a domain restriction") {
  auto src = parse_model(
      "new_int(x, 0, 9)\n"
      "new_int(y, 0, 9)\n"
      "int_eq(y, 2)\n"
      "int_leq(x, y)\n");
  Model m = lower(src);
  simplify(m, Options{});
  CHECK(m.cur_hi(m.decls[0].num) == 2);
  for (const auto& c : m.constraints) CHECK_FALSE(c.alive);
}

TEST_CASE("int_eq unions bitwise and deletes") {
  auto src = parse_model(
      "new_int(x, 0, 4)\n"
      "new_int(y, 2, 6)\n"
      "int_eq(x, y)\n");
  Model m = lower(src);
  simplify(m, Options{});
  CHECK_FALSE(m.constraints[0].alive);
  CHECK(m.cur_lo(m.decls[0].num) == 2);
  CHECK(m.cur_hi(m.decls[1].num) == 4);
  CHECK(m.store.same_class(m.decls[0].num.geq_lit(3), m.decls[1].num.geq_lit(3)));
}

TEST_CASE("int_neq with a fixed side removes the value") {
  auto src = parse_model(
      "new_int(x, 0, 9)\n"
      "int_neq(x, 3)\n");
  Model m = lower(src);
  simplify(m, Options{});
  CHECK_FALSE(m.constraints[0].alive);
  CHECK_FALSE(m.value_possible(m.decls[0].num, 3));
  CHECK(m.value_possible(m.decls[0].num, 2));
}

TEST_CASE("comparator with a constant input partially evaluates") {
  auto src = parse_model(
      "new_bool(x)\nnew_bool(o1)\nnew_bool(o2)\n"
      "comparator(true, x, o1, o2)\n");
  Model m = lower(src);
  simplify(m, Options{});
  CHECK_FALSE(m.constraints[0].alive);
  CHECK(m.store.resolve(m.decls[1].lit) == Lit::t());
  CHECK(m.store.same_class(m.decls[2].lit, m.decls[0].lit));
}

TEST_CASE("xor folding binds, pairs, and detects contradictions") {
  {
    auto src = parse_model("new_bool(x)\nbool_array_xor([x, true])\n");
    Model m = lower(src);
    simplify(m, Options{});
    CHECK(m.store.resolve(m.decls[0].lit) == Lit::f());
  }
  {
    auto src = parse_model("new_bool(x)\nnew_bool(y)\nbool_array_xor([x, y])\n");
    Model m = lower(src);
    simplify(m, Options{});
    CHECK(m.store.resolve(m.decls[0].lit) == ~m.store.resolve(m.decls[1].lit));
  }
  {
    auto src = parse_model("new_bool(x)\nbool_array_xor([x, x])\n");
    Model m = lower(src);
    simplify(m, Options{});
    CHECK(m.status() == ModelStatus::UnsatAtCompileTime);
  }
}

TEST_CASE("asserting contradictory bounds is compile-time unsat") {
  auto src = parse_model(
      "new_int(x, 0, 9)\n"
      "int_geq(x, 4)\n"
      "int_lt(x, 4)\n");
  Model m = lower(src);
  simplify(m, Options{});
  CHECK(m.status() == ModelStatus::UnsatAtCompileTime);
}

TEST_CASE("decomposition base cases follow the divide-and-conquer scheme") {
  {
    auto src = parse_model(
        "new_int(a, 0, 3)\nnew_int(s, 0, 3)\nint_array_plus([a], s)\n");
    Model m = lower(src);
    simplify(m, Options{});
    // reduced to int_eq then unions
    CHECK(m.store.same_class(m.decls[0].num.geq_lit(2), m.decls[1].num.geq_lit(2)));
  }
  {
    auto src = parse_model(
        "new_int(a, 0, 2)\nnew_int(b, 0, 2)\nnew_int(s, 0, 4)\n"
        "int_array_plus([a, b], s)\n");
    Model m = lower(src);
    Options opts;
    opts.card = CardStrategy::Adder;
    simplify(m, opts);
    int live_plus = 0;
    for (const auto& c : m.constraints)
      if (c.alive && c.kind == Kind::IntPlus) ++live_plus;
    CHECK(live_plus == 1);
  }
}

TEST_CASE("allDiff becomes pairwise disequalities") {
  auto src = parse_model(
      "new_int(a, 0, 2)\nnew_int(b, 0, 2)\nnew_int(c, 0, 2)\n"
      "int_array_allDiff([a, b, c])\n");
  Model m = lower(src);
  simplify(m, Options{});
  int neqs = 0;
  for (const auto& c : m.constraints)
    if (c.kind == Kind::IntNeq) ++neqs;
  CHECK(neqs == 3);
}

TEST_CASE("simplify is idempotent") {
  std::string text =
      "new_int(x, 0, 5)\nnew_int(y, 0, 5)\nnew_int(z, 0, 8)\n"
      "new_bool(p)\nnew_bool(q)\nnew_bool(r)\n"
      "int_plus(x, y, z)\n"
      "bool_array_or([p, q, r])\n"
      "bool_array_sum_leq([p, q, r], 2)\n"
      "int_leq(x, y)\n"
      "int_neq(x, z)\n";
  for (auto strat : {CardStrategy::Adder, CardStrategy::Merger, CardStrategy::Hybrid}) {
    Options opts;
    opts.card = strat;
    Model m = lower(parse_model(text));
    simplify(m, opts);
    SimplifyResult second = simplify(m, opts);
    CHECK(second.firings == 0);
  }
}

TEST_CASE("worklist order does not change observables") {
  // same model, constraints listed in different orders
  std::string a =
      "new_int(x, 0, 5)\nnew_int(y, 0, 5)\n"
      "int_plus(x, y, 5)\n"
      "int_geq(x, 2)\n"
      "int_neq(y, 2)\n";
  std::string b =
      "new_int(x, 0, 5)\nnew_int(y, 0, 5)\n"
      "int_neq(y, 2)\n"
      "int_geq(x, 2)\n"
      "int_plus(x, y, 5)\n";
  Model ma = lower(parse_model(a)), mb = lower(parse_model(b));
  simplify(ma, Options{});
  simplify(mb, Options{});
  auto doms = [](Model& m) {
    std::vector<std::vector<long long>> out;
    for (const auto& d : m.decls) {
      std::vector<long long> dom;
      for (long long v = d.num.lo(); v <= d.num.hi(); ++v)
        if (m.value_possible(d.num, v)) dom.push_back(v);
      out.push_back(dom);
    }
    return out;
  };
  CHECK(doms(ma) == doms(mb));
  // both models have the same solution sets
  auto sa = oracle::brute_solutions(parse_model(a));
  auto sb = oracle::brute_solutions(parse_model(b));
  CHECK(sa == sb);
}

TEST_CASE("simplification preserves solution sets on randomized small models") {
  std::mt19937 rng(2024);
  const char* rels[] = {"leq", "geq", "eq", "lt", "gt", "neq"};
  for (int trial = 0; trial < 60; ++trial) {
    long long lo1 = static_cast<long long>(rng() % 4) - 2;
    long long hi1 = lo1 + 1 + static_cast<long long>(rng() % 4);
    long long lo2 = static_cast<long long>(rng() % 3);
    long long hi2 = lo2 + 1 + static_cast<long long>(rng() % 4);
    std::string text = "new_int(x, " + std::to_string(lo1) + ", " + std::to_string(hi1) + ")\n" +
                       "new_int(y, " + std::to_string(lo2) + ", " + std::to_string(hi2) + ")\n" +
                       "new_int(z, -1, 6)\n";
    text += std::string("int_") + rels[rng() % 6] + "(x, y)\n";
    switch (rng() % 4) {
      case 0: text += "int_plus(x, y, z)\n"; break;
      case 1: text += "int_max(x, y, z)\n"; break;
      case 2: text += "int_min(x, y, z)\n"; break;
      case 3: text += "int_abs(x, z)\n"; break;
    }
    SourceModel src = parse_model(text);
    auto want = oracle::brute_solutions(src);
    Options opts;
    opts.card = rng() % 2 ? CardStrategy::Hybrid : CardStrategy::Adder;
    CompileResult r = compile_model(src, opts);
    if (r.cnf.unsat) {
      CHECK(want.empty());
      continue;
    }
    auto got = oracle::cnf_projected_solutions(r);
    CHECK(want == got);
  }
}

TEST_CASE("trace reports rule firings when enabled") {
  Options opts;
  opts.trace = true;
  auto src = parse_model("new_int(a, 0, 5)\nnew_int(b, 0, 5)\nint_plus(a, b, 5)\n");
  Model m = lower(src);
  SimplifyResult r = Simplifier(m, opts).run();
  CHECK(r.firings > 0);
  REQUIRE_FALSE(r.trace.empty());
  bool saw_plus = false;
  for (const auto& line : r.trace)
    if (line.find("int_plus") != std::string::npos) saw_plus = true;
  CHECK(saw_plus);
}
