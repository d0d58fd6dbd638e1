#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"

using namespace stralg;

namespace {
std::string op(const Algebra& A, Op o, const std::string& u) {
  auto r = apply(A, o, w(A, u));
  return r ? fmt(A, *r) : "undefined";
}
}  // namespace

TEST_CASE("operators on Lambda2") {
  auto A = fixture("lambda2");
  CHECK(op(A, Op::L, "a") == "e c a b' a");
  CHECK(op(A, Op::LBar, "a") == "c a");
  CHECK(op(A, Op::L, "c") == "undefined");
  CHECK(fmt(A, *op_r(A, invert(w(A, "a")))) == fmt(A, invert(*op_l(A, w(A, "a")))));
}

TEST_CASE("a non-torsion-free algebra") {
  auto A = fixture("nontf");
  auto once = op_lbar(A, w(A, "a"));
  REQUIRE(once);
  CHECK(fmt(A, *once) == "c a");
  CHECK_FALSE(op_lbar(A, *once));
  auto rep = is_torsion_free(A);
  CHECK_FALSE(rep.torsion_free);
  CHECK_FALSE(rep.witnesses.empty());
  CHECK(is_torsion_free(fixture("lambda2")).torsion_free);
  CHECK(is_torsion_free(fixture("gp23")).torsion_free);
}

TEST_CASE("graded operators") {
  auto A = fixture("gp23");
  Word base = Word::lazy(0, -1);
  REQUIRE(l_grade_limit(A, base) == 1u);
  CHECK(fmt(A, op_l_graded(A, base, 0)) == "a b'");
  CHECK(fmt(A, op_l_graded(A, base, 1)) == "b'");
  CHECK_THROWS_AS(op_l_graded(A, base, 2), Error);
}

TEST_CASE("successor and predecessor are inverse") {
  for (auto name : {"lambda2", "gp23", "fig2_mid"}) {
    auto A = fixture(name);
    for (auto& u : enumerate_strings(A, 5))
      for (const HammockRef& h : {left_hammock_of(A, u), right_hammock_of(A, u)}) {
        if (auto s = successor(A, u, h)) {
          INFO(fmt(A, u));
          CHECK(compare(A, u, *s, h) < 0);
          CHECK(predecessor(A, *s, h) == u);
        }
      }
  }
}

TEST_CASE("hammock membership") {
  auto A = fixture("lambda2");
  Word u = w(A, "a");
  HammockRef wrong{source(A, u), Side::Left, sigma(A, u)};
  CHECK_THROWS_AS(successor(A, u, wrong), Error);
}

TEST_CASE("one-sided expansions") {
  auto A = fixture("lambda2");
  auto e = one_sided_expansion(A, w(A, "a"), Op::L);
  REQUIRE(e.defined);
  CHECK(same_band(A, e.period, w(A, "e d'")));
  auto u = one_sided_expansion(A, w(A, "c"), Op::L);
  CHECK_FALSE(u.defined);
  CHECK(u.undefined_at_step == 1);
  auto G = fixture("gp23");
  for (auto& s : enumerate_strings(G, 4))
    for (Op o : {Op::L, Op::LBar, Op::R, Op::RBar}) {
      auto r = one_sided_expansion(G, s, o);
      if (r.defined) CHECK(is_prime_band_word(G, r.period.syl));
    }
}

TEST_CASE("interval finiteness") {
  auto G = fixture("gp23");
  auto r = interval_is_finite(G, 0, -1, 1);
  CHECK_FALSE(r.finite);
  REQUIRE(r.witness);
  CHECK(fmt(G, r.endpoint) == "b'");
  CHECK(interval_is_finite(G, 0, -1, 0).finite);
}
