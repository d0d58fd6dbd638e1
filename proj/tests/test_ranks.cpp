#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"

using namespace stralg;

TEST_CASE("inclusion terms") {
  auto A = fixture("gp23");
  Word base = Word::lazy(0, -1);
  CHECK(format_term(A, inclusion_terms(A, base, w(A, "b'"))) == "l_1(v,-)");
  CHECK(format_factors(left_factors(A, base, w(A, "a b' b' a b'"), false)) == "l l_1 l");
  CHECK(format_factors(left_factors(A, w(A, "b'"), w(A, "b' a b' b' a b'"), true)) == "lbar_1 lbar");
  CHECK_THROWS_AS(left_factors(A, w(A, "a b'"), w(A, "b'"), false), Error);
}

TEST_CASE("recursive system in GP") {
  auto A = fixture("gp23");
  BridgeSystem S(A);
  auto r = find_recursive_system(A, S, w(A, "b'"), 0, -1);
  REQUIRE(r);
  CHECK(format_factors(r->composite()) == "l l_1 l");
  CHECK(format_factors(r->mu.factors) == "lbar_1 lbar");
  CHECK(format_factors(r->tau.factors) == "l_1");
  CHECK(r->solution == w(A, "b'"));
  CHECK(verify_recursive_system(A, *r));
  auto sol = evaluate_bracket(A, r->mu.factors, r->composite(), Word::lazy(0, -1));
  REQUIRE(sol);
  CHECK(fmt(A, *sol) == "b'");
  CHECK_THROWS_AS(find_recursive_system(A, S, w(A, "a"), 0, 1), Error);
}

TEST_CASE("no recursive system in Lambda2") {
  auto A = fixture("lambda2");
  BridgeSystem S(A);
  Word x = w(A, "b'");
  auto [v, s] = term_base(A, x);
  CHECK_FALSE(find_recursive_system(A, S, x, v, s));
}

TEST_CASE("string maps") {
  auto A = fixture("gp23");
  RankAnalyzer R(A);
  Word base = Word::lazy(0, -1);
  auto r = R.rank_ss(base, base, w(A, "b'"));
  CHECK(r.cls == RankClass::StableRadical);
  CHECK(r.recursive.has_value());
  CHECK(R.rank_ss(w(A, "a b'"), w(A, "a b'"), w(A, "a b'")).cls == RankClass::Finite);
  CHECK_THROWS_AS(R.rank_ss(base, w(A, "a"), w(A, "b'")), Error);
}

TEST_CASE("band maps") {
  auto A = fixture("fig2_mid");
  RankAnalyzer R(A);
  CHECK(R.rank_sb(w(A, "c d'"), w(A, "c d'")).cls == RankClass::ExactlyOmega);
  CHECK(R.rank_bs(w(A, "a b'"), w(A, "b' a")).cls == RankClass::ExactlyOmega);
  CHECK(R.rank_bb(w(A, "a b'"), w(A, "a b'"), std::nullopt, true).cls == RankClass::Finite);
  CHECK_THROWS_AS(R.rank_sb(w(A, "c d'"), w(A, "a")), Error);
  auto G = fixture("gp23");
  RankAnalyzer RG(G);
  CHECK(RG.rank_sb(w(G, "a b'"), w(G, "a b'")).cls == RankClass::StableRadical);
}

TEST_CASE("stable ranks of the three examples") {
  auto L = fixture("fig2_left"), M = fixture("fig2_mid"), R = fixture("fig2_right"), D = fixture("lambda2");
  CHECK(RankAnalyzer(L).stable_rank_estimate().value == StableRank::Omega);
  CHECK(RankAnalyzer(M).stable_rank_estimate().value == StableRank::OmegaPlusOne);
  auto e = RankAnalyzer(R).stable_rank_estimate();
  CHECK(e.value == StableRank::OmegaPlusTwo);
  CHECK(e.composable.has_value());
  CHECK_THROWS_AS(RankAnalyzer(D).stable_rank_estimate(), Error);
}

TEST_CASE("dichotomy") {
  auto M = fixture("fig2_mid"), N = fixture("nonmtf");
  auto a = RankAnalyzer(M).audit_dichotomy(5);
  CHECK(a.descriptors > 0);
  CHECK(a.counts[RankClass::IndeterminateAtLeastOmega] == 0);
  auto n = RankAnalyzer(N).audit_dichotomy(4);
  CHECK(n.counts[RankClass::IndeterminateAtLeastOmega] > 0);
}
