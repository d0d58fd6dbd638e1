#pragma once

// Strings generated by paths in the extended bridge quiver, and
// extendability of strings to bands.

#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "stralg/bridges.hpp"
#include "stralg/hammocks.hpp"

namespace stralg {

/// 1_(v,i) -u0-> b1 -u1-> ... -> bn -un-> 1_(v',i') with one exponent
/// m_j >= -1 per band vertex.
struct PathSpec {
  std::vector<BridgeArrow> arrows;
  std::vector<int> exponents;

  bool operator==(const PathSpec& o) const {
    if (arrows.size() != o.arrows.size() || exponents != o.exponents) return false;
    for (std::size_t k = 0; k < arrows.size(); ++k)
      if (arrows[k].source != o.arrows[k].source || arrows[k].target != o.arrows[k].target ||
          !(arrows[k].label == o.arrows[k].label))
        return false;
    return true;
  }
};

namespace detail {

// Prepends `piece` to the reduced word `x`, cancelling inverse pairs.
inline void prepend_reduced(std::vector<Syllable>& x, const std::vector<Syllable>& piece) {
  for (auto it = piece.rbegin(); it != piece.rend(); ++it) {
    if (!x.empty() && x.front() == it->inverse())
      x.erase(x.begin());
    else
      x.insert(x.begin(), *it);
  }
}

inline std::vector<Syllable> power_syllables(const Word& b, int m) {
  std::vector<Syllable> s;
  if (m == 0) return s;
  Word base = m > 0 ? b : invert(b);
  for (int k = 0; k < std::abs(m); ++k) s.insert(s.end(), base.syl.begin(), base.syl.end());
  return s;
}

}  // namespace detail

/// Spells u_n b_n^{m_n} ... u_1 b_1^{m_1} u_0 and reduces it.
inline Word generate_string(const Algebra& A, const ExtendedBridgeQuiver& Q, const PathSpec& p) {
  if (p.arrows.empty())
    throw Error(ErrorKind::InvalidDescriptor, "a path needs at least one arrow");
  if (p.exponents.size() + 1 != p.arrows.size())
    throw Error(ErrorKind::InvalidDescriptor, "one exponent per band vertex is required");
  const auto& first = Q.vertices[static_cast<std::size_t>(p.arrows.front().source)];
  const auto& last = Q.vertices[static_cast<std::size_t>(p.arrows.back().target)];
  if (first.is_band || last.is_band)
    throw Error(ErrorKind::InvalidDescriptor, "paths start and end at lazy paths");
  for (std::size_t k = 0; k + 1 < p.arrows.size(); ++k) {
    if (p.arrows[k].target != p.arrows[k + 1].source)
      throw Error(ErrorKind::InvalidDescriptor, "arrows do not form a path");
    if (!Q.vertices[static_cast<std::size_t>(p.arrows[k].target)].is_band)
      throw Error(ErrorKind::InvalidDescriptor, "interior vertices must be bands");
    if (p.exponents[k] < -1)
      throw Error(ErrorKind::InvalidDescriptor, "exponents must be at least -1");
  }
  std::vector<Syllable> x;
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    if (k > 0) {
      const Word& b = Q.vertices[static_cast<std::size_t>(p.arrows[k].source)].word;
      detail::prepend_reduced(x, detail::power_syllables(b, p.exponents[k - 1]));
    }
    detail::prepend_reduced(x, p.arrows[k].label.syl);
  }
  Word start = first.word, end = last.word;
  if (x.empty()) {
    if (!(start == end)) throw Error(ErrorKind::NotAString, "reduction leaves incompatible lazy paths");
    return start;
  }
  if (!is_string(A, x)) throw Error(ErrorKind::NotAString, "reduced word is not a string");
  Word w = Word::of(x);
  if (!try_concat(A, w, start) || !try_concat(A, end, w))
    throw Error(ErrorKind::NotAString, "reduced word does not attach to the end lazy paths");
  return w;
}

/// Lazy paths a generating path for u starts and ends at.
inline std::pair<Word, Word> generating_endpoints(const Algebra& A, const Word& u) {
  if (u.is_lazy()) return {u, u};
  return {Word::lazy(source(A, u), -sigma(A, u)), Word::lazy(target(A, u), epsilon(A, u))};
}

namespace detail {

// Counts generating paths of bounded length by depth-first enumeration.
struct PathCounter {
  const ExtendedBridgeQuiver& Q;
  const Word& target;
  int start_vertex, end_vertex;
  std::size_t slack, max_arrows;
  std::size_t arrows = 0, count = 0;

  bool plausible(const std::vector<Syllable>& x) const {
    const auto& u = target.syl;
    std::size_t k = 0;
    while (k < x.size() && k < u.size() && x[x.size() - 1 - k] == u[u.size() - 1 - k]) ++k;
    return x.size() - k <= slack;
  }

  void from_band(int j, const std::vector<Syllable>& x) {
    for (auto& a : Q.arrows) {
      if (a.source != j || a.weak_only) continue;
      if (a.target == end_vertex && a.kind == BridgeKind::ReverseHalf) {
        auto y = x;
        prepend_reduced(y, a.label.syl);
        if (y == target.syl) ++count;
      }
      if (a.kind != BridgeKind::Bridge || (a.target == j && a.label.is_lazy())) continue;
      if (arrows + 1 >= max_arrows) continue;
      auto y = x;
      prepend_reduced(y, a.label.syl);
      enter_band(a.target, y);
    }
  }

  void enter_band(int j, const std::vector<Syllable>& x) {
    const Word& b = Q.vertices[static_cast<std::size_t>(j)].word;
    const int max_m = static_cast<int>((target.size() + slack) / b.size() + 1);
    ++arrows;
    for (int m = -1; m <= max_m; ++m) {
      auto y = x;
      prepend_reduced(y, power_syllables(b, m));
      if (plausible(y)) from_band(j, y);
    }
    --arrows;
  }

  void run() {
    for (auto& a : Q.arrows) {
      if (a.source != start_vertex || a.weak_only) continue;
      if (a.kind == BridgeKind::Zero && a.target == end_vertex && a.label == target) ++count;
      if (a.kind == BridgeKind::Half && plausible(a.label.syl)) enter_band(a.target, a.label.syl);
    }
  }
};

inline std::size_t generation_slack(const Algebra&, const BridgeSystem& S) {
  std::size_t max_band = 0;
  for (auto& b : S.prime_bands()) max_band = std::max(max_band, b.length);
  return 2 * max_band + S.catalog().longest;
}

}  // namespace detail

/// A shortest generating path for u. Breadth-first over states (band,
/// reduced word so far); arrows are tried in quiver order and exponents in
/// the order 0, 1, 2, ... then -1, so the result is deterministic.
inline PathSpec find_generating_path(const Algebra& A, const BridgeSystem& S,
                                     const ExtendedBridgeQuiver& Q, const Word& u) {
  auto [start, end] = generating_endpoints(A, u);
  const int sv = Q.lazy_vertex(start.vertex, start.sign);
  const int ev = Q.lazy_vertex(end.vertex, end.sign);
  const std::size_t slack = detail::generation_slack(A, S);
  for (auto& a : Q.arrows)
    if (a.source == sv && a.target == ev && !a.weak_only && a.kind == BridgeKind::Zero &&
        a.label == u)
      return PathSpec{{a}, {}};

  struct Node {
    int band;
    std::vector<Syllable> x;
    int parent;
    const BridgeArrow* arrow;
    int exponent;
  };
  std::vector<Node> nodes;
  std::set<std::pair<int, std::vector<Syllable>>> seen;
  auto plausible = [&](const std::vector<Syllable>& x) {
    std::size_t k = 0;
    while (k < x.size() && k < u.size() && x[x.size() - 1 - k] == u.syl[u.size() - 1 - k]) ++k;
    return x.size() - k <= slack;
  };
  auto push = [&](int band, const std::vector<Syllable>& x, int parent, const BridgeArrow* a) {
    const Word& b = Q.vertices[static_cast<std::size_t>(band)].word;
    const std::size_t max_m = (u.size() + slack) / b.size() + 1;
    std::vector<int> order;
    for (std::size_t m = 0; m <= max_m; ++m) order.push_back(static_cast<int>(m));
    order.push_back(-1);
    for (int m : order) {
      auto y = x;
      detail::prepend_reduced(y, detail::power_syllables(b, m));
      if (!plausible(y) || !seen.insert({band, y}).second) continue;
      nodes.push_back({band, std::move(y), parent, a, m});
    }
  };
  for (auto& a : Q.arrows)
    if (a.source == sv && !a.weak_only && a.kind == BridgeKind::Half && plausible(a.label.syl))
      push(a.target, a.label.syl, -1, &a);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const int j = nodes[k].band;
    for (auto& a : Q.arrows) {
      if (a.source != j || a.weak_only) continue;
      if (a.kind == BridgeKind::ReverseHalf && a.target == ev) {
        auto y = nodes[k].x;
        detail::prepend_reduced(y, a.label.syl);
        if (y != u.syl) continue;
        PathSpec p;
        p.arrows.push_back(a);
        for (int n = static_cast<int>(k); n >= 0; n = nodes[static_cast<std::size_t>(n)].parent) {
          p.arrows.insert(p.arrows.begin(), *nodes[static_cast<std::size_t>(n)].arrow);
          p.exponents.insert(p.exponents.begin(), nodes[static_cast<std::size_t>(n)].exponent);
        }
        return p;
      }
      if (a.kind != BridgeKind::Bridge || (a.target == j && a.label.is_lazy())) continue;
      auto y = nodes[k].x;
      detail::prepend_reduced(y, a.label.syl);
      push(a.target, y, static_cast<int>(k), &a);
    }
  }
  throw Error(ErrorKind::Internal, "no generating path found for " + format_word(A, u));
}

/// Number of generating paths with at most max_arrows arrows.
inline std::size_t count_generating_paths(const Algebra& A, const BridgeSystem& S,
                                          const ExtendedBridgeQuiver& Q, const Word& u,
                                          std::size_t max_arrows) {
  auto [start, end] = generating_endpoints(A, u);
  detail::PathCounter c{Q,
                       u,
                       Q.lazy_vertex(start.vertex, start.sign),
                       Q.lazy_vertex(end.vertex, end.sign),
                       detail::generation_slack(A, S),
                       max_arrows};
  c.run();
  return c.count;
}

inline std::string format_path(const Algebra& A, const ExtendedBridgeQuiver& Q, const PathSpec& p) {
  std::string out = format_word(A, Q.vertices[static_cast<std::size_t>(p.arrows.front().source)].word);
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    out += " -[" + format_word(A, p.arrows[k].label) + "]-> ";
    const auto& v = Q.vertices[static_cast<std::size_t>(p.arrows[k].target)];
    out += v.is_band ? "(" + format_word(A, v.word) + ")^" + std::to_string(p.exponents[k])
                     : format_word(A, v.word);
  }
  return out;
}

// ---- extendability --------------------------------------------------------------------

struct ExtendableResult {
  bool extendable = false;
  Word band;  // a band rotation containing u
  std::string method;
};

namespace detail {

// Labels along a shortest bridge path from band i to band j (possibly empty).
inline std::optional<std::vector<std::pair<int, Word>>> bridge_path(const BridgeSystem& S, int i, int j) {
  const int n = static_cast<int>(S.num_bands());
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  std::vector<Word> via(static_cast<std::size_t>(n));
  std::queue<int> q;
  parent[static_cast<std::size_t>(i)] = -1;
  q.push(i);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    if (x == j) break;
    for (int y = 0; y < n; ++y)
      for (auto& u : S.bridges_between(static_cast<std::size_t>(x), static_cast<std::size_t>(y))) {
        if (parent[static_cast<std::size_t>(y)] != -2) break;
        parent[static_cast<std::size_t>(y)] = x;
        via[static_cast<std::size_t>(y)] = u;
        q.push(y);
      }
  }
  if (parent[static_cast<std::size_t>(j)] == -2) return std::nullopt;
  std::vector<std::pair<int, Word>> path;  // (band reached, label), from b' back to b
  for (int y = j; y != i; y = parent[static_cast<std::size_t>(y)])
    path.push_back({y, via[static_cast<std::size_t>(y)]});
  return path;
}

}  // namespace detail

/// Whether u is a substring of a band rotation. First tries the closing
/// construction b v u v' b' u_m ... u_1 b^p along a bridge path from b to
/// b'; falls back to a bounded search for x with x u a band.
inline ExtendableResult is_extendable(const Algebra& A, const BridgeSystem& S, const Word& u) {
  ExtendableResult res;
  const auto& cat = S.catalog();
  const int nb = static_cast<int>(S.num_bands());
  if (!u.is_lazy()) {
    std::vector<std::pair<int, Word>> left, right;  // (band, connector)
    for (int b = 0; b < nb; ++b)
      for (auto& v : cat.strings) {
        auto vu = try_concat(A, v, u);
        if (vu && try_concat(A, S.band(static_cast<std::size_t>(b)), *vu)) left.push_back({b, v});
        auto uv = try_concat(A, u, v);
        if (uv && try_concat(A, *uv, S.band(static_cast<std::size_t>(b)))) right.push_back({b, v});
      }
    for (auto& [b, v] : left)
      for (auto& [b2, v2] : right) {
        auto path = detail::bridge_path(S, b, b2);
        if (!path) continue;
        std::vector<Syllable> w;
        auto add = [&](const Word& x) { w.insert(w.end(), x.syl.begin(), x.syl.end()); };
        add(v);
        add(u);
        add(v2);
        add(S.band(static_cast<std::size_t>(b2)));
        for (std::size_t k = 0; k < path->size(); ++k) {
          add((*path)[k].second);
          if (k + 1 < path->size()) add(S.band(static_cast<std::size_t>((*path)[k + 1].first)));
        }
        for (int p = 1; p <= 3; ++p) {
          auto cand = w;
          for (int r = 0; r < p; ++r) {
            const auto& bb = S.band(static_cast<std::size_t>(b)).syl;
            cand.insert(cand.end(), bb.begin(), bb.end());
          }
          if (is_string(A, cand) && is_band(A, cand)) {
            res = {true, Word::of(cand), "bridge-path"};
            return res;
          }
        }
      }
  }
  // fallback: x u is a band for some x
  std::size_t max_band = 0;
  for (auto& b : S.prime_bands()) max_band = std::max(max_band, b.length);
  const std::size_t limit = u.size() + 2 * (max_band + cat.longest) + 2;
  if (u.is_lazy()) {
    for (auto& b : S.prime_bands())
      for (std::size_t k = 0; k < b.length; ++k) {
        Word r = Word::of(rotate_left(b.rep.syl, k));
        if (try_concat(A, r, u)) return {true, r, "rotation"};
      }
    return res;
  }
  std::vector<Syllable> cur = u.syl;
  std::function<bool()> dfs = [&]() {
    if (cur.size() > u.size() && is_band(A, cur)) return true;
    if (cur.size() >= limit) return false;
    for (int a = 0; a < A.num_arrows(); ++a)
      for (bool d : {true, false}) {
        if (!can_prepend(A, {a, d}, cur)) continue;
        cur.insert(cur.begin(), Syllable{a, d});
        if (dfs()) return true;
        cur.erase(cur.begin());
      }
    return false;
  };
  if (u.size() >= 2 && is_band(A, u.syl)) return {true, u, "itself"};
  if (dfs()) return {true, Word::of(cur), "search"};
  return res;
}

/// Bridge-quiver flags together with torsion-freeness of the hammocks.
inline AlgebraClassification classify_algebra(const Algebra& A, const BridgeSystem& S) {
  auto c = classify_bridge_quiver(S);
  c.torsion_free = is_torsion_free(A).torsion_free;
  return c;
}

}  // namespace stralg
