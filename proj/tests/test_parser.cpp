#include <doctest.h>

#include <random>

#include "equi/parser.hpp"

using namespace equi;

TEST_CASE("parses declarations and constraints") {
  auto m = parse_model(
      "% a small model\n"
      "new_bool(a)\n"
      "new_bool(b)\n"
      "bool_array_or([a, -b]).\n");
  CHECK(m.terms.size() == 3);
  CHECK(m.terms[2].name == "bool_array_or");
  REQUIRE(m.terms[2].args.size() == 1);
  REQUIRE(m.terms[2].args[0].list.size() == 2);
  CHECK(m.terms[2].args[0].list[1].type == SrcArg::NegIdent);
}

TEST_CASE("undeclared identifier is a diagnostic with position") {
  try {
    parse_model("new_int(x,0,5)\nnew_int(y,0,5)\nint_plus(x,y,z)\n");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("z") != std::string::npos);
    CHECK(e.line == 3);
  }
}

TEST_CASE("duplicate declaration rejected") {
  CHECK_THROWS_AS(parse_model("new_bool(a)\nnew_bool(a)\n"), Error);
}

TEST_CASE("empty domain rejected") {
  CHECK_THROWS_AS(parse_model("new_int(i,3,1)\n"), Error);
}

TEST_CASE("arity and argument kinds checked") {
  CHECK_THROWS_AS(parse_model("new_bool(a)\nbool_eq(a)\n"), Error);
  CHECK_THROWS_AS(parse_model("new_bool(a)\nnew_int(i,0,3)\nbool_eq(a,i)\n"), Error);
  CHECK_THROWS_AS(parse_model("foo(1,2)\n"), Error);
}

TEST_CASE("group labels attach to constraints") {
  auto m = parse_model("new_bool(a)\nsym: bool_array_or([a])\n");
  CHECK(m.terms[1].group == "sym");
  Model lowered = lower(m);
  REQUIRE(lowered.constraints.size() == 1);
  CHECK(lowered.constraints[0].group == 0);
  CHECK(lowered.groups[0] == "sym");
}

TEST_CASE("parse-print-parse is a fixpoint") {
  std::string text =
      "new_int(x, 0, 5)\n"
      "new_int(y, -2, 7)\n"
      "new_bool(a)\n"
      "new_binary(w, 4)\n"
      "g: int_plus(x, y, 5)\n"
      "bool_array_sum_leq([a, -a, true], 2)\n"
      "int_array_lin_eq([2, -3], [x, y], 4)\n"
      "binary_times(w, 3, w)\n";
  auto m1 = parse_model(text);
  std::string p1 = print_model(m1);
  auto m2 = parse_model(p1);
  std::string p2 = print_model(m2);
  CHECK(p1 == p2);
}

TEST_CASE("lowering blasts integers and aliases bool2int") {
  auto src = parse_model(
      "new_int(i, 0, 5)\n"
      "new_bool(x)\n"
      "new_int(b, 0, 1)\n"
      "bool2int(x, b)\n");
  Model m = lower(src);
  CHECK(m.decls[0].num.width() == 5);
  CHECK(m.store.same_class(m.decls[1].lit, m.decls[2].num.geq_lit(1)));
}

TEST_CASE("bool2int on wide domain is rejected") {
  auto src = parse_model("new_bool(x)\nnew_int(i, 0, 3)\nbool2int(x, i)\n");
  CHECK_THROWS_AS(lower(src), Error);
}

TEST_CASE("relation surface forms canonicalize onto leq views") {
  auto src = parse_model(
      "new_int(x, 0, 5)\n"
      "new_int(y, 0, 5)\n"
      "int_lt(x, y)\n"
      "int_gt(x, y)\n"
      "int_geq(x, y)\n");
  Model m = lower(src);
  REQUIRE(m.constraints.size() == 3);
  for (const auto& c : m.constraints) CHECK(c.kind == Kind::IntLeq);
  // x < y  ==  x <= (y-1 view)
  CHECK(m.constraints[0].I[1].lo() == -1);
  // x > y  ==  y <= (x-1 view)
  CHECK(m.constraints[1].I[0].lo() == 0);
  CHECK(m.constraints[1].I[1].lo() == -1);
}

TEST_CASE("integer constants lift to constant unaries") {
  auto src = parse_model("new_int(x, 0, 5)\nint_plus(x, 2, 4)\n");
  Model m = lower(src);
  CHECK(m.constraints[0].I[1].is_const());
  CHECK(m.constraints[0].I[1].lo() == 2);
}

TEST_CASE("rejecting malformed input never crashes, always diagnoses") {
  std::mt19937 rng(13);
  const std::string chars = "abxyz_019(),[]-%.:\n ";
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    size_t len = rng() % 60;
    for (size_t i = 0; i < len; ++i) text += chars[rng() % chars.size()];
    try {
      auto m = parse_model(text);
      (void)m;
    } catch (const Error&) {
      // a diagnostic is the expected failure mode
    }
  }
}
