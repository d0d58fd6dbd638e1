#pragma once

// Bridges between prime bands, half/zero bridges at lazy paths and the
// (extended) bridge quiver.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "stralg/bands.hpp"

namespace stralg {

enum class BridgeKind { Bridge, Half, ReverseHalf, Zero };

inline std::string_view to_string(BridgeKind k) {
  switch (k) {
    case BridgeKind::Bridge: return "bridge";
    case BridgeKind::Half: return "half";
    case BridgeKind::ReverseHalf: return "reverse-half";
    case BridgeKind::Zero: return "zero";
  }
  return "?";
}

struct BridgeArrow {
  int source = 0;  // vertex index in the quiver
  int target = 0;
  Word label;
  BridgeKind kind = BridgeKind::Bridge;
  bool weak_only = false;
  std::optional<Syllable> exit;
  std::optional<int> sigma_ba;
};

namespace detail {

// Raw juxtaposition v u of two labels; a lazy factor disappears and a
// fully lazy product is `fallback`.
inline Word juxtapose(const Word& v, const Word& u, const Word& fallback) {
  if (v.is_lazy() && u.is_lazy()) return fallback;
  if (v.is_lazy()) return u;
  if (u.is_lazy()) return v;
  Word w = v;
  w.syl.insert(w.syl.end(), u.syl.begin(), u.syl.end());
  return w;
}

inline bool is_rotation_of(const std::vector<Syllable>& s, const std::vector<Syllable>& band) {
  if (s.size() != band.size()) return false;
  for (std::size_t k = 0; k < band.size(); ++k)
    if (rotate_left(band, k) == s) return true;
  return false;
}

// All words obtained from w by deleting one occurrence of a rotation of band.
inline std::vector<Word> remove_band_rotation(const Word& w, const Word& band,
                                              const Word& fallback) {
  std::vector<Word> out;
  if (w.size() < band.size()) return out;
  for (std::size_t p = 0; p + band.size() <= w.size(); ++p) {
    std::vector<Syllable> piece(w.syl.begin() + static_cast<long>(p),
                                w.syl.begin() + static_cast<long>(p + band.size()));
    if (!is_rotation_of(piece, band.syl)) continue;
    std::vector<Syllable> rest(w.syl.begin(), w.syl.begin() + static_cast<long>(p));
    rest.insert(rest.end(), w.syl.begin() + static_cast<long>(p + band.size()), w.syl.end());
    out.push_back(rest.empty() ? fallback : Word::of(rest));
  }
  return out;
}

}  // namespace detail

/// A weak half bridge x -> band with its exit data.
struct HalfCandidate {
  Word label;
  int band = 0;
  Syllable exit;
  int sigma_ba = 0;
  bool half = false;

  bool same_node(const HalfCandidate& o) const { return band == o.band && label == o.label; }
};

/// Bridges among a fixed list of band words; the list is either the prime
/// band representatives or their inverses (for reverse half bridges).
class BridgeContext {
 public:
  BridgeContext(const Algebra& A, const BandFreeCatalog& cat, std::vector<Word> bands,
                bool closure = true)
      : A_(&A), cat_(&cat), bands_(std::move(bands)), closure_(closure) {
    const std::size_t n = bands_.size();
    weak_.assign(n, std::vector<std::vector<Word>>(n));
    strong_.assign(n, std::vector<std::vector<Word>>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (auto& u : cat.strings) {
          auto ub = try_concat(A, u, bands_[i]);
          if (ub && try_concat(A, bands_[j], *ub)) weak_[i][j].push_back(u);
        }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (auto& u : weak_[i][j])
          if (!excluded(i, j, u)) strong_[i][j].push_back(u);
  }

  const Algebra& algebra() const { return *A_; }
  const std::vector<Word>& bands() const { return bands_; }
  const std::vector<Word>& weak(std::size_t i, std::size_t j) const { return weak_[i][j]; }
  const std::vector<Word>& strong(std::size_t i, std::size_t j) const { return strong_[i][j]; }

  /// The excluded factorizations through a prime band b:
  /// u = u2 u1, or u = u2' u1' with u2 = u2' u2'', u1 = u1'' u1', b = u2'' u1''.
  bool excluded(std::size_t i, std::size_t j, const Word& u) const {
    if (u.is_lazy()) return false;
    for (std::size_t k = 0; k < bands_.size(); ++k) {
      const auto& b = bands_[k].syl;
      for (auto& u1 : weak_[i][k]) {
        if (u1.is_lazy()) continue;
        for (auto& u2 : weak_[k][j]) {
          if (u2.is_lazy()) continue;
          if (u2.size() + u1.size() == u.size() &&
              std::equal(u2.syl.begin(), u2.syl.end(), u.syl.begin()) &&
              std::equal(u1.syl.begin(), u1.syl.end(), u.syl.begin() + static_cast<long>(u2.size())))
            return true;
          for (std::size_t s = 1; s < u.size(); ++s) {
            std::size_t l1 = u.size() - s;  // |u1'|
            if (u2.size() < s || u1.size() < l1) continue;
            if (!std::equal(u.syl.begin(), u.syl.begin() + static_cast<long>(s), u2.syl.begin()))
              continue;
            if (!std::equal(u.syl.begin() + static_cast<long>(s), u.syl.end(),
                            u1.syl.end() - static_cast<long>(l1)))
              continue;
            std::vector<Syllable> mid(u2.syl.begin() + static_cast<long>(s), u2.syl.end());
            mid.insert(mid.end(), u1.syl.begin(), u1.syl.end() - static_cast<long>(l1));
            if (mid == b) return true;
          }
        }
      }
    }
    return false;
  }

  /// Exit of b_i -u-> b_j: the first syllable from the right where
  /// ^oo(b_j) u b_i and ^oo(b_i) differ.
  std::optional<Syllable> bridge_exit(std::size_t i, std::size_t j, const Word& u) const {
    const auto& b1 = bands_[i].syl;
    const auto& b2 = bands_[j].syl;
    std::vector<Syllable> lhs(b1.rbegin(), b1.rend());  // read from the right
    lhs.insert(lhs.end(), u.syl.rbegin(), u.syl.rend());
    std::size_t reach = lhs.size() + 2 * b1.size() * b2.size() + b2.size();
    while (lhs.size() < reach) lhs.insert(lhs.end(), b2.rbegin(), b2.rend());
    for (std::size_t k = 0; k < lhs.size(); ++k)
      if (lhs[k] != b1[b1.size() - 1 - (k % b1.size())]) return lhs[k];
    return std::nullopt;
  }

  /// Weak half bridges from the lazy path x, with the half-bridge flag set
  /// by minimality under the relation below.
  std::vector<HalfCandidate> half_bridges_from(const Word& x) const {
    const Algebra& A = *A_;
    std::vector<HalfCandidate> nodes;
    for (std::size_t j = 0; j < bands_.size(); ++j)
      for (auto& u : cat_->strings) {
        if (!try_concat(A, u, x)) continue;
        auto bu = try_concat(A, bands_[j], u);
        if (!bu) continue;
        Syllable exit = bu->syl.back();
        nodes.push_back({u, static_cast<int>(j), exit, exit.direct ? -1 : 1, false});
      }
    auto below = sqsubseteq(nodes, x);
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      bool half = true;
      for (std::size_t m = 0; m < nodes.size() && half; ++m)
        if (m != n && below[m][n] && !below[n][m] && nodes[m].sigma_ba == nodes[n].sigma_ba)
          half = false;
      nodes[n].half = half;
    }
    return nodes;
  }

  /// below[m][n] iff nodes[m] is below nodes[n]: n is reached from m by
  /// left composition with a bridge, optionally removing a rotation of the
  /// band it leaves. In closure mode the relation is made transitive.
  std::vector<std::vector<char>> sqsubseteq(const std::vector<HalfCandidate>& nodes,
                                            const Word& x) const {
    const std::size_t N = nodes.size();
    std::vector<std::vector<char>> step(N, std::vector<char>(N, 0));
    auto find = [&](const Word& label, std::size_t band) -> int {
      for (std::size_t n = 0; n < N; ++n)
        if (nodes[n].band == static_cast<int>(band) && nodes[n].label == label)
          return static_cast<int>(n);
      return -1;
    };
    for (std::size_t m = 0; m < N; ++m) {
      std::size_t j = static_cast<std::size_t>(nodes[m].band);
      for (std::size_t k = 0; k < bands_.size(); ++k)
        for (auto& v : strong_[j][k]) {
          Word raw = detail::juxtapose(v, nodes[m].label, x);
          std::vector<Word> cands{raw};
          for (auto& r : detail::remove_band_rotation(raw, bands_[j], x)) cands.push_back(r);
          for (auto& c : cands) {
            int n = find(c, k);
            if (n >= 0 && static_cast<std::size_t>(n) != m) step[m][static_cast<std::size_t>(n)] = 1;
          }
        }
    }
    if (!closure_) return step;
    auto reach = step;
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t a = 0; a < N; ++a)
        if (reach[a][k])
          for (std::size_t b = 0; b < N; ++b)
            if (reach[k][b]) reach[a][b] = 1;
    return reach;
  }

 private:
  const Algebra* A_;
  const BandFreeCatalog* cat_;
  std::vector<Word> bands_;
  bool closure_;
  std::vector<std::vector<std::vector<Word>>> weak_, strong_;
};

/// Vertex of the extended bridge quiver: a prime band or a lazy path.
struct QuiverVertex {
  bool is_band = false;
  Word word;
};

struct ExtendedBridgeQuiver {
  std::vector<QuiverVertex> vertices;  // prime bands first, then lazy paths
  std::vector<BridgeArrow> arrows;     // includes weak-only arrows when requested
  std::size_t num_bands = 0;

  int lazy_vertex(int v, int i) const {
    return static_cast<int>(num_bands) + 2 * v + (i > 0 ? 0 : 1);
  }
  int band_vertex(const Word& rep) const {
    for (std::size_t k = 0; k < num_bands; ++k)
      if (vertices[k].word == rep) return static_cast<int>(k);
    return -1;
  }
  std::vector<BridgeArrow> arrows_between(int s, int t, bool include_weak = true) const {
    std::vector<BridgeArrow> out;
    for (auto& a : arrows)
      if (a.source == s && a.target == t && (include_weak || !a.weak_only)) out.push_back(a);
    return out;
  }
};

/// Everything needed to talk about bridges of one algebra.
class BridgeSystem {
 public:
  explicit BridgeSystem(const Algebra& A, bool closure = true)
      : A_(&A),
        primes_(enumerate_prime_bands(A)),
        cat_(enumerate_band_free_strings(A)),
        fwd_(A, cat_, reps(primes_), closure),
        inv_(A, cat_, inverted(reps(primes_)), closure) {}

  explicit BridgeSystem(Algebra&&, bool = true) = delete;

  const Algebra& algebra() const { return *A_; }
  const std::vector<Band>& prime_bands() const { return primes_; }
  const BandFreeCatalog& catalog() const { return cat_; }
  const BridgeContext& forward() const { return fwd_; }
  const BridgeContext& inverted_context() const { return inv_; }
  std::size_t num_bands() const { return primes_.size(); }
  const Word& band(std::size_t k) const { return primes_[k].rep; }

  int band_index(const Word& w) const {
    if (!is_band(*A_, w)) return -1;
    auto canon = canonical_rotation(*A_, w.syl);
    for (std::size_t k = 0; k < primes_.size(); ++k)
      if (primes_[k].rep.syl == canon) return static_cast<int>(k);
    return -1;
  }

  const std::vector<Word>& weak_bridges(std::size_t i, std::size_t j) const { return fwd_.weak(i, j); }
  const std::vector<Word>& bridges_between(std::size_t i, std::size_t j) const {
    return fwd_.strong(i, j);
  }

  std::vector<HalfCandidate> half_bridges_from(int v, int i) const {
    return fwd_.half_bridges_from(Word::lazy(v, i));
  }

  /// Reverse weak half bridges b -u-> 1_(v,i): u b a string and 1_(v,i) u
  /// defined; obtained by inverting half bridges of the inverted bands.
  std::vector<HalfCandidate> reverse_half_bridges_to(int v, int i) const {
    auto raw = inv_.half_bridges_from(Word::lazy(v, -i));
    for (auto& c : raw) {
      c.label = invert(c.label);
      c.exit = c.exit.inverse();
    }
    return raw;
  }

  struct ZeroCandidate {
    Word label;
    bool zero = false;
  };

  std::vector<ZeroCandidate> zero_bridges(int v1, int i1, int v2, int i2) const {
    const Algebra& A = *A_;
    Word x1 = Word::lazy(v1, i1), x2 = Word::lazy(v2, i2);
    std::vector<ZeroCandidate> out;
    std::vector<HalfCandidate> from, to;
    bool loaded = false;
    for (auto& u : cat_.strings) {
      if (!try_concat(A, x2, u) || !try_concat(A, u, x1)) continue;
      if (!loaded) {
        from = half_bridges_from(v1, i1);
        to = reverse_half_bridges_to(v2, i2);
        loaded = true;
      }
      bool excluded = false;
      if (!u.is_lazy())
        for (auto& h1 : from) {
          if (h1.label.is_lazy() || excluded) continue;
          for (auto& h2 : to) {
            if (h2.label.is_lazy() || h2.band != h1.band) continue;
            Word raw = detail::juxtapose(h2.label, h1.label, x1);
            if (raw == u) excluded = true;
            for (auto& r : detail::remove_band_rotation(raw, band(static_cast<std::size_t>(h1.band)), x1))
              if (r == u) excluded = true;
            if (excluded) break;
          }
        }
      out.push_back({u, !excluded});
    }
    return out;
  }

  ExtendedBridgeQuiver build(bool include_weak) const {
    const Algebra& A = *A_;
    ExtendedBridgeQuiver Q;
    Q.num_bands = primes_.size();
    for (auto& b : primes_) Q.vertices.push_back({true, b.rep});
    for (int v = 0; v < A.num_vertices(); ++v)
      for (int i : {1, -1}) Q.vertices.push_back({false, Word::lazy(v, i)});
    const int nb = static_cast<int>(primes_.size());
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j)
        for (auto& u : fwd_.weak(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
          auto& strong = fwd_.strong(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
          bool is_strong = std::find(strong.begin(), strong.end(), u) != strong.end();
          if (!is_strong && !include_weak) continue;
          BridgeArrow a{i, j, u, BridgeKind::Bridge, !is_strong, std::nullopt, std::nullopt};
          a.exit = fwd_.bridge_exit(static_cast<std::size_t>(i), static_cast<std::size_t>(j), u);
          if (a.exit) a.sigma_ba = a.exit->direct ? -1 : 1;
          Q.arrows.push_back(a);
        }
    for (int v = 0; v < A.num_vertices(); ++v)
      for (int i : {1, -1}) {
        int x = Q.lazy_vertex(v, i);
        for (auto& c : half_bridges_from(v, i)) {
          if (!c.half && !include_weak) continue;
          Q.arrows.push_back({x, c.band, c.label, BridgeKind::Half, !c.half, c.exit, c.sigma_ba});
        }
        for (auto& c : reverse_half_bridges_to(v, i)) {
          if (!c.half && !include_weak) continue;
          Q.arrows.push_back(
              {c.band, x, c.label, BridgeKind::ReverseHalf, !c.half, c.exit, c.sigma_ba});
        }
      }
    for (int v1 = 0; v1 < A.num_vertices(); ++v1)
      for (int i1 : {1, -1})
        for (int v2 = 0; v2 < A.num_vertices(); ++v2)
          for (int i2 : {1, -1})
            for (auto& z : zero_bridges(v1, i1, v2, i2)) {
              if (!z.zero && !include_weak) continue;
              Q.arrows.push_back({Q.lazy_vertex(v1, i1), Q.lazy_vertex(v2, i2), z.label,
                                  BridgeKind::Zero, !z.zero, std::nullopt, std::nullopt});
            }
    return Q;
  }

 private:
  static std::vector<Word> reps(const std::vector<Band>& bs) {
    std::vector<Word> out;
    for (auto& b : bs) out.push_back(b.rep);
    return out;
  }
  static std::vector<Word> inverted(std::vector<Word> ws) {
    for (auto& w : ws) w = invert(w);
    return ws;
  }

  const Algebra* A_;
  std::vector<Band> primes_;
  BandFreeCatalog cat_;
  BridgeContext fwd_, inv_;
};

// ---- graph analysis of the bridge quiver -------------------------------------------

/// Band-vertex adjacency from the (non-weak) bridges; lazy loops on a
/// single band are dropped since they do not move anywhere.
inline std::vector<std::vector<int>> band_adjacency(const BridgeSystem& S) {
  const std::size_t n = S.num_bands();
  std::vector<std::vector<int>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (auto& u : S.bridges_between(i, j)) {
        if (i == j && u.is_lazy()) continue;
        if (std::find(adj[i].begin(), adj[i].end(), static_cast<int>(j)) == adj[i].end())
          adj[i].push_back(static_cast<int>(j));
      }
  return adj;
}

/// Strongly connected component id of each vertex (Tarjan).
inline std::vector<int> strongly_connected_components(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> on(n, 0);
  int counter = 0, ncomp = 0;
  std::function<void(int)> dfs = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = 1;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        dfs(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        int w = stack.back();
        stack.pop_back();
        on[w] = 0;
        comp[w] = ncomp;
        if (w == v) break;
      }
      ++ncomp;
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) dfs(v);
  return comp;
}

inline std::vector<char> reachable_from(const std::vector<std::vector<int>>& adj,
                                        const std::vector<int>& seeds) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack = seeds;
  for (int s : seeds) seen[static_cast<std::size_t>(s)] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

struct AlgebraClassification {
  bool domestic = true;
  bool torsion_free = true;
  bool meta_union_cyclic = false;
  bool meta_torsion_free = false;
  std::vector<int> meta_band;  // band indices of a directed cycle, if any
  std::string domestic_reason, meta_union_cyclic_reason, meta_torsion_free_reason;
};

/// Graph-theoretic flags of the bridge quiver. Torsion-freeness is
/// supplied by the caller since it is decided on hammocks.
inline AlgebraClassification classify_bridge_quiver(const BridgeSystem& S) {
  AlgebraClassification c;
  auto adj = band_adjacency(S);
  const std::size_t n = adj.size();
  auto comp = strongly_connected_components(adj);
  std::map<int, std::vector<int>> members;
  for (std::size_t v = 0; v < n; ++v) members[comp[v]].push_back(static_cast<int>(v));
  std::vector<char> on_cycle(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    bool self = std::find(adj[v].begin(), adj[v].end(), static_cast<int>(v)) != adj[v].end();
    if (self || members[comp[v]].size() > 1) on_cycle[v] = 1;
  }
  for (std::size_t v = 0; v < n && c.meta_band.empty(); ++v) {
    if (!on_cycle[v]) continue;
    // shortest cycle through v by BFS inside its component
    std::vector<int> parent(n, -1);
    std::queue<int> q;
    q.push(static_cast<int>(v));
    std::vector<char> seen(n, 0);
    while (!q.empty() && c.meta_band.empty()) {
      int x = q.front();
      q.pop();
      for (int y : adj[static_cast<std::size_t>(x)]) {
        if (y == static_cast<int>(v)) {
          std::vector<int> cyc;
          for (int z = x; z != -1; z = parent[static_cast<std::size_t>(z)]) cyc.push_back(z);
          std::reverse(cyc.begin(), cyc.end());
          c.meta_band = cyc;
          break;
        }
        if (!seen[static_cast<std::size_t>(y)] && comp[static_cast<std::size_t>(y)] == comp[v]) {
          seen[static_cast<std::size_t>(y)] = 1;
          parent[static_cast<std::size_t>(y)] = x;
          q.push(y);
        }
      }
    }
  }
  c.domestic = c.meta_band.empty();
  c.domestic_reason = c.domestic ? "bridge quiver has no directed cycle"
                                 : "meta-band found";

  // weakly connected components
  std::vector<int> wcc(n, -1);
  std::vector<std::vector<int>> undirected(n);
  for (std::size_t v = 0; v < n; ++v)
    for (int w : adj[v]) {
      undirected[v].push_back(w);
      undirected[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
    }
  int nw = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (wcc[v] >= 0) continue;
    auto seen = reachable_from(undirected, {static_cast<int>(v)});
    for (std::size_t u = 0; u < n; ++u)
      if (seen[u]) wcc[u] = nw;
    ++nw;
  }
  bool all_big = n > 0, all_strong = n > 0;
  for (int w = 0; w < nw; ++w) {
    std::vector<int> vs;
    for (std::size_t v = 0; v < n; ++v)
      if (wcc[v] == w) vs.push_back(static_cast<int>(v));
    if (vs.size() < 2) {
      all_big = false;
      if (c.meta_union_cyclic_reason.empty())
        c.meta_union_cyclic_reason = "component of " + format_word(S.algebra(), S.band(static_cast<std::size_t>(vs[0]))) + " has one vertex";
    }
    for (int v : vs)
      if (comp[static_cast<std::size_t>(v)] != comp[static_cast<std::size_t>(vs[0])]) {
        all_strong = false;
        if (c.meta_union_cyclic_reason.empty())
          c.meta_union_cyclic_reason = "component of " + format_word(S.algebra(), S.band(static_cast<std::size_t>(vs[0]))) +
                                       " is not strongly connected";
      }
  }
  if (n == 0) c.meta_union_cyclic_reason = "no bands";
  c.meta_union_cyclic = !c.domestic && all_big && all_strong;

  // every arrow lies on a Z-indexed path: its source is reached from a
  // cycle and its target reaches one
  std::vector<int> cyc;
  for (std::size_t v = 0; v < n; ++v)
    if (on_cycle[v]) cyc.push_back(static_cast<int>(v));
  std::vector<std::vector<int>> rev(n);
  for (std::size_t v = 0; v < n; ++v)
    for (int w : adj[v]) rev[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
  auto from_cycle = reachable_from(adj, cyc);
  auto to_cycle = reachable_from(rev, cyc);
  bool z_paths = true;
  for (std::size_t v = 0; v < n && z_paths; ++v)
    for (int w : adj[v])
      if (!from_cycle[v] || !to_cycle[static_cast<std::size_t>(w)]) {
        z_paths = false;
        c.meta_torsion_free_reason = "bridge " + format_word(S.algebra(), S.band(v)) + " -> " +
                                     format_word(S.algebra(), S.band(static_cast<std::size_t>(w))) +
                                     " does not extend to a Z-indexed path";
        break;
      }
  if (c.domestic && c.meta_torsion_free_reason.empty()) c.meta_torsion_free_reason = "domestic";
  if (!all_big && c.meta_torsion_free_reason.empty())
    c.meta_torsion_free_reason = c.meta_union_cyclic_reason;
  c.meta_torsion_free = !c.domestic && all_big && z_paths;
  return c;
}

}  // namespace stralg
