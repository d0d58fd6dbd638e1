#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"

using namespace stralg;

namespace {
// label -> (kind, weak) for arrows between two quiver vertices
std::map<std::string, std::string> arrow_set(const Algebra& A, const ExtendedBridgeQuiver& Q, int s, int t) {
  std::map<std::string, std::string> out;
  for (auto& a : Q.arrows_between(s, t))
    out[a.label.is_lazy() ? "1" : fmt(A, a.label)] = a.weak_only ? "weak" : std::string(to_string(a.kind));
  return out;
}
}  // namespace

TEST_CASE("GP extended bridge quiver") {
  auto A = fixture("gp23");
  BridgeSystem S(A);
  auto Q = S.build(true);
  int minus = Q.lazy_vertex(0, -1), plus = Q.lazy_vertex(0, 1);
  int aB = Q.band_vertex(w(A, "a b'")), aBB = Q.band_vertex(w(A, "a b' b'"));
  int bA = Q.band_vertex(w(A, "b a'")), bbA = Q.band_vertex(w(A, "b b a'"));
  REQUIRE(aB >= 0);
  REQUIRE(bbA >= 0);
  using M = std::map<std::string, std::string>;
  CHECK(arrow_set(A, Q, minus, aB) == M{{"1", "half"}, {"a", "half"}, {"b'", "weak"}});
  CHECK(arrow_set(A, Q, minus, aBB) == M{{"1", "half"}, {"a", "half"}});
  CHECK(arrow_set(A, Q, plus, bbA) == M{{"1", "half"}, {"b", "half"}, {"b b", "weak"}});
  CHECK(arrow_set(A, Q, plus, bA) == M{{"1", "half"}, {"b", "half"}, {"b b", "weak"}});
}

TEST_CASE("bridges between GP bands") {
  auto A = fixture("gp23");
  BridgeSystem S(A);
  int i = S.band_index(w(A, "a b'")), j = S.band_index(w(A, "a b' b'"));
  CHECK_FALSE(S.bridges_between(i, j).empty());
  CHECK_FALSE(S.bridges_between(j, i).empty());
  auto adj = band_adjacency(S);
  auto comp = strongly_connected_components(adj);
  CHECK(comp[i] == comp[j]);
}

TEST_CASE("Lambda2 bridge") {
  auto A = fixture("lambda2");
  BridgeSystem S(A);
  int aB = S.band_index(w(A, "a b'")), eD = S.band_index(w(A, "e d'"));
  REQUIRE(aB >= 0);
  REQUIRE(eD >= 0);
  auto& labels = S.bridges_between(aB, eD);
  REQUIRE(labels.size() == 1);
  CHECK(fmt(A, labels[0]) == "e c");
}

TEST_CASE("classification") {
  struct Row {
    const char* name;
    bool domestic, torsion_free, mtf;
  };
  for (auto r : {Row{"lambda2", true, true, false}, Row{"gp23", false, true, true},
                 Row{"nontf", true, false, false}, Row{"fig2_left", false, true, true},
                 Row{"fig2_mid", false, true, true}, Row{"fig2_right", false, true, true},
                 Row{"nonmtf", false, true, false}}) {
    INFO(r.name);
    auto A = fixture(r.name);
    BridgeSystem S(A);
    auto c = classify_algebra(A, S);
    CHECK(c.domestic == r.domestic);
    CHECK(c.torsion_free == r.torsion_free);
    CHECK(c.meta_torsion_free == r.mtf);
  }
}

TEST_CASE("generation with a negative exponent") {
  auto A = fixture("ex333");
  BridgeSystem S(A);
  auto Q = S.build(true);
  Word u0 = w(A, "c d' a"), u1 = w(A, "e b'");
  int band = Q.band_vertex(w(A, "c d' b'"));
  REQUIRE(band >= 0);
  int s = Q.lazy_vertex(source(A, u0), -sigma(A, u0)), t = Q.lazy_vertex(target(A, u1), epsilon(A, u1));
  PathSpec p{{BridgeArrow{s, band, u0, BridgeKind::Half, false, {}, {}},
              BridgeArrow{band, t, u1, BridgeKind::ReverseHalf, false, {}, {}}},
             {-1}};
  CHECK(fmt(A, generate_string(A, Q, p)) == "e a");
  p.exponents = {-2};
  CHECK_THROWS_AS(generate_string(A, Q, p), Error);
}

TEST_CASE("several generating paths for b'") {
  auto A = fixture("gp23");
  BridgeSystem S(A);
  auto Q = S.build(false);
  CHECK(count_generating_paths(A, S, Q, w(A, "b'"), 3) >= 2);
}

TEST_CASE("generate after find is the identity") {
  for (auto name : {"lambda2", "gp23", "ex333", "fig2_mid"}) {
    auto A = fixture(name);
    BridgeSystem S(A);
    auto Q = S.build(false);
    for (auto& u : enumerate_strings(A, 6)) {
      INFO(name << " " << fmt(A, u));
      CHECK(generate_string(A, Q, find_generating_path(A, S, Q, u)) == u);
    }
  }
}

TEST_CASE("extendability") {
  auto L = fixture("lambda2");
  BridgeSystem SL(L);
  CHECK_FALSE(is_extendable(L, SL, w(L, "c")).extendable);
  CHECK(is_extendable(L, SL, w(L, "a")).extendable);
  auto G = fixture("gp23");
  BridgeSystem SG(G);
  for (auto& u : enumerate_strings(G, 6)) {
    auto r = is_extendable(G, SG, u);
    INFO(fmt(G, u));
    REQUIRE(r.extendable);
    CHECK(is_band(G, r.band));
  }
}
