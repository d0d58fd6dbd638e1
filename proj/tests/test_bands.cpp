#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"

using namespace stralg;

namespace {
std::set<std::string> names(const Algebra& A, const std::vector<Band>& bs) {
  std::set<std::string> out;
  for (auto& b : bs) out.insert(fmt(A, b.rep));
  return out;
}
}  // namespace

TEST_CASE("Lambda2 has four bands") {
  auto A = fixture("lambda2");
  auto bs = enumerate_bands(A, 12);
  CHECK(names(A, bs) == std::set<std::string>{"a b'", "b a'", "d e'", "e d'"});
  for (auto& b : bs) CHECK(b.prime);
}

TEST_CASE("GP prime bands") {
  auto A = fixture("gp23");
  CHECK(names(A, enumerate_prime_bands(A)) == std::set<std::string>{"a b'", "a b' b'", "b a'", "b b a'"});
  CHECK(is_prime_band_word(A, w(A, "a b' b'").syl));
  CHECK(is_band(A, w(A, "a b' b' a b'")));
  CHECK_FALSE(is_prime_band_word(A, w(A, "a b' b' a b'").syl));
  auto bs = enumerate_bands(A, 6);
  CHECK(bs.size() > 4);
}

TEST_CASE("band predicates") {
  auto A = fixture("gp23");
  CHECK_FALSE(is_band(A, w(A, "a b' a b'")));  // not primitive
  CHECK_FALSE(is_band(A, w(A, "b' b'")));      // not mixed
  CHECK(same_band(A, w(A, "b' a"), w(A, "a b'")));
  CHECK_THROWS_AS(canonical_band(A, w(A, "a")), Error);
}

TEST_CASE("band rotation search") {
  auto A = fixture("gp23");
  auto occ = contains_band_rotation(A, w(A, "b' a b'"));
  REQUIRE(occ);
  CHECK(occ->position == 0);
  CHECK(occ->length == 2);
  auto L = fixture("lambda2");
  CHECK_FALSE(contains_band_rotation(L, w(L, "e c a")));
}

TEST_CASE("band-free catalog") {
  for (auto name : {"lambda2", "gp23", "fig2_left", "fig2_mid", "fig2_right"}) {
    INFO(name);
    auto A = fixture(name);
    auto cat = enumerate_band_free_strings(A);
    CHECK(cat.longest <= cat.length_bound);
    for (auto& s : cat.strings) CHECK(is_band_free(A, s));
    for (auto& s : enumerate_strings(A, 6))
      if (is_band_free(A, s)) CHECK(cat.contains(s));
  }
}

TEST_CASE("band powers") {
  auto A = fixture("gp23");
  Word b = w(A, "a b'");
  CHECK(fmt(A, band_power(A, b, 2)) == "a b' a b'");
  CHECK(fmt(A, band_power(A, b, -1)) == "b a'");
  CHECK(band_power(A, b, 0).is_lazy());
}
