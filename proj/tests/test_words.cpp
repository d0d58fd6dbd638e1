#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"

using namespace stralg;

TEST_CASE("literals") {
  auto A = fixture("lambda2");
  CHECK(fmt(A, w(A, "e c a b'")) == "e c a b'");
  CHECK(fmt(A, w(A, "1(v2,-)")) == "1(v2,-)");
  CHECK_THROWS_AS(w(A, "c b"), Error);  // relation
  CHECK_THROWS_AS(w(A, "a c"), Error);  // not composable
  CHECK_THROWS_AS(w(A, "z"), Error);
}

TEST_CASE("concatenation and endpoints") {
  auto A = fixture("lambda2");
  auto u = concat(A, w(A, "e c"), w(A, "a b'"));
  CHECK(fmt(A, u) == "e c a b'");
  CHECK(A.vertex_id(source(A, u)) == "v2");
  CHECK(A.vertex_id(target(A, u)) == "v4");
  CHECK_FALSE(try_concat(A, w(A, "d"), w(A, "c")).has_value());
}

TEST_CASE("lazy absorption") {
  auto A = fixture("gp23");
  Word u = w(A, "a b'");
  Word right = Word::lazy(source(A, u), -sigma(A, u));
  Word left = Word::lazy(target(A, u), epsilon(A, u));
  CHECK(try_concat(A, u, right) == u);
  CHECK(try_concat(A, left, u) == u);
  CHECK_FALSE(try_concat(A, u, Word::lazy(right.vertex, -right.sign)).has_value());
}

TEST_CASE("inverse") {
  auto A = fixture("lambda2");
  Word u = w(A, "e c a b'");
  CHECK(fmt(A, invert(u)) == "b a' c' e'");
  CHECK(invert(invert(u)) == u);
  CHECK(sigma(A, invert(u)) == epsilon(A, u));
}

TEST_CASE("string enumeration") {
  auto A = fixture("gp23");
  auto all = enumerate_strings(A, 3);
  CHECK(std::count_if(all.begin(), all.end(), [](const Word& x) { return x.is_lazy(); }) == 2);
  for (auto& x : all) CHECK(is_valid(A, x));
  auto collapsed = enumerate_strings(A, 3, true);
  CHECK(collapsed.size() < all.size());
}

TEST_CASE("image and factor substrings") {
  auto A = fixture("lambda2");
  Word u = w(A, "e c a b'");
  std::vector<std::string> images, factors;
  for (auto& s : image_substrings(u, true)) images.push_back(fmt(A, subword(A, u, s.start, s.end)));
  for (auto& s : factor_substrings(u, true)) factors.push_back(fmt(A, subword(A, u, s.start, s.end)));
  CHECK(std::find(images.begin(), images.end(), "e c a b'") != images.end());
  CHECK(std::find(images.begin(), images.end(), "e c") != images.end());
  CHECK(std::find(factors.begin(), factors.end(), "e c a") != factors.end());
  CHECK(std::find(images.begin(), images.end(), "e c a") == images.end());
}
