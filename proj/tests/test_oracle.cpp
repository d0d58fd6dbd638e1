#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "stralg/oracle.hpp"

using namespace stralg;

TEST_CASE("brute-force successor") {
  auto A = fixture("lambda2");
  Word a = w(A, "a");
  auto s = oracle_successor(A, a, left_hammock_of(A, a), 6);
  REQUIRE(s);
  CHECK(fmt(A, *s) == "e c a b' a");
  auto G = fixture("gp23");
  Word base = Word::lazy(0, -1);
  CHECK(oracle_successor(G, base, left_hammock_of(G, base), 3) == op_l(G, base));
}

TEST_CASE("maximal element has no brute-force successor") {
  auto A = fixture("lambda2");
  for (auto& u : enumerate_strings(A, 4)) {
    auto h = left_hammock_of(A, u);
    if (!successor(A, u, h)) CHECK_FALSE(oracle_successor(A, u, h, 8));
  }
}

TEST_CASE("brute-force bands") {
  CHECK(oracle_bands(fixture("lambda2"), 6).size() == 4);
  CHECK(oracle_prime_bands(fixture("gp23"), 3).size() == 4);
  CHECK(oracle_bands(fixture("gp23"), 1).empty());
}

TEST_CASE("corrupted bound is caught") {
  auto A = fixture("gp23");
  CHECK_FALSE(check_prime_band_completeness(A, 2, 6).passed());
  CHECK(check_prime_band_completeness(A, prime_band_length_bound(A), 6).passed());
}

TEST_CASE("all checks pass on the fixtures") {
  for (auto name : {"lambda2", "gp23", "fig2_left"}) {
    auto A = fixture(name);
    for (auto& r : run_all_checks(A)) {
      INFO(name << " " << r.check);
      CHECK(r.passed());
    }
  }
}
