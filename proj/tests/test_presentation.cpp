#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"

using namespace stralg;

TEST_CASE("presentation round trip") {
  for (auto name : {"lambda2", "gp23", "fig2_left", "ex333"}) {
    auto p = parse_presentation(read_fixture(name));
    auto q = parse_presentation(serialize_presentation(p));
    CHECK(p == q);
  }
}

TEST_CASE("fixtures are string algebras") {
  for (auto name : {"lambda2", "gp23", "nontf", "ex333", "fig2_left", "fig2_mid", "fig2_right", "nonmtf"}) {
    INFO(name);
    CHECK(validate_string_algebra(parse_presentation(read_fixture(name))).is_string_algebra);
  }
}

TEST_CASE("dropping a a from GP leaves an infinite algebra") {
  auto p = parse_presentation(
      "algebra gp\nvertices: v\narrow a: v -> v\narrow b: v -> v\nrelations: b b b; a b; b a\n");
  auto rep = validate_string_algebra(p);
  REQUIRE_FALSE(rep.is_string_algebra);
  bool finiteness = false;
  for (auto& v : rep.violations) finiteness = finiteness || v.axiom == Axiom::Finiteness;
  CHECK(finiteness);
}

TEST_CASE("three arrows out of a vertex") {
  auto p = parse_presentation(
      "algebra x\nvertices: u v\narrow a: u -> v\narrow b: u -> v\narrow c: u -> v\n");
  auto rep = validate_string_algebra(p);
  REQUIRE_FALSE(rep.is_string_algebra);
  CHECK(rep.violations[0].axiom == Axiom::OutDegree);
}

TEST_CASE("syntax errors") {
  CHECK_THROWS_AS(parse_presentation("vertices: v\narrow a: v -> w\n"), Error);
  try {
    parse_presentation("algebra x\nvertices: v\narrow a v v\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Syntax);
  }
}

TEST_CASE("derived signs are consistent with the supplied ones") {
  auto A = fixture("gp23");
  auto& s = A.signs();
  int a = A.presentation().arrow_index("a"), b = A.presentation().arrow_index("b");
  CHECK(s.sigma[a] == 1);
  CHECK(s.sigma[b] == -1);
  CHECK(s.epsilon[a] == -1);
  CHECK(s.epsilon[b] == 1);
}
