#pragma once

// Bands, prime bands and band-free strings.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "stralg/words.hpp"

namespace stralg {

struct Band {
  Word rep;  // canonical rotation
  std::size_t length = 0;
  bool prime = false;

  bool operator==(const Band& o) const { return rep == o.rep; }
};

inline std::vector<Syllable> rotate_left(const std::vector<Syllable>& s, std::size_t k) {
  std::vector<Syllable> r(s.begin() + static_cast<long>(k), s.end());
  r.insert(r.end(), s.begin(), s.begin() + static_cast<long>(k));
  return r;
}

inline bool is_primitive(const std::vector<Syllable>& s) {
  const std::size_t n = s.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (std::size_t k = d; k < n && periodic; ++k) periodic = s[k] == s[k - d];
    if (periodic) return false;
  }
  return true;
}

/// Cyclic, mixed, primitive and with a string square. Any rotation of a
/// band passes.
inline bool is_band(const Algebra& A, const std::vector<Syllable>& s) {
  if (s.size() < 2) return false;
  if (A.src(s.back()) != A.tgt(s.front())) return false;
  bool has_direct = false, has_inverse = false;
  for (auto x : s) (x.direct ? has_direct : has_inverse) = true;
  if (!has_direct || !has_inverse) return false;
  if (!is_primitive(s)) return false;
  std::vector<Syllable> sq = s;
  sq.insert(sq.end(), s.begin(), s.end());
  return is_string(A, sq);
}
inline bool is_band(const Algebra& A, const Word& w) { return is_band(A, w.syl); }

/// The rotations with leftmost syllable direct and rightmost inverse.
inline std::vector<std::vector<Syllable>> qualifying_rotations(const std::vector<Syllable>& s) {
  std::vector<std::vector<Syllable>> out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto r = rotate_left(s, k);
    if (r.front().direct && !r.back().direct) out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<Syllable> canonical_rotation(const Algebra& A,
                                                const std::vector<Syllable>& s) {
  auto rots = qualifying_rotations(s);
  ensure(!rots.empty(), "band without a qualifying rotation");
  return *std::min_element(rots.begin(), rots.end(), [&](auto& x, auto& y) {
    return A.syllables_less(x, y);
  });
}

/// True iff no rotation splits into at least two consecutive band pieces.
inline bool is_prime_band_word(const Algebra& A, const std::vector<Syllable>& s) {
  const std::size_t n = s.size();
  for (std::size_t k = 0; k < n; ++k) {
    auto r = rotate_left(s, k);
    // split[i]: r[0, i) is a concatenation of one or more band pieces
    std::vector<char> split(n + 1, 0);
    for (std::size_t i = 2; i < n; ++i)
      for (std::size_t j = 0; j + 2 <= i && !split[i]; ++j)
        if ((j == 0 || split[j]) &&
            is_band(A, std::vector<Syllable>(r.begin() + static_cast<long>(j),
                                             r.begin() + static_cast<long>(i))))
          split[i] = 1;
    for (std::size_t j = 2; j + 2 <= n; ++j)
      if (split[j] && is_band(A, std::vector<Syllable>(r.begin() + static_cast<long>(j),
                                                       r.end())))
        return false;
  }
  return true;
}

inline Band canonical_band(const Algebra& A, const Word& w) {
  if (!is_band(A, w)) throw Error(ErrorKind::NotABand, "not a band: " + format_word(A, w));
  Band b;
  b.rep = Word::of(canonical_rotation(A, w.syl));
  b.length = w.size();
  b.prime = is_prime_band_word(A, w.syl);
  return b;
}

inline bool is_prime_band(const Algebra& A, const Band& b) {
  return is_prime_band_word(A, b.rep.syl);
}

inline bool same_band(const Algebra& A, const Word& x, const Word& y) {
  return x.size() == y.size() && canonical_rotation(A, x.syl) == canonical_rotation(A, y.syl);
}

/// n_AB: two-syllable strings with a direct syllable left of an inverse one.
inline std::size_t count_ab_shapes(const Algebra& A) {
  std::size_t n = 0;
  for (int a = 0; a < A.num_arrows(); ++a)
    for (int b = 0; b < A.num_arrows(); ++b)
      if (is_string(A, {{a, true}, {b, false}})) ++n;
  return n;
}

inline std::size_t prime_band_length_bound(const Algebra& A) {
  return 2 * count_ab_shapes(A) * (A.max_direct_path() + 1);
}

inline std::size_t band_free_length_bound(const Algebra& A) {
  std::size_t n = count_ab_shapes(A), m = A.max_direct_path();
  return (n + 1) * m + 2 * n;
}

namespace detail {

inline bool order_bands(const Algebra& A, const Band& x, const Band& y) {
  if (x.length != y.length) return x.length < y.length;
  return A.syllables_less(x.rep.syl, y.rep.syl);
}

}  // namespace detail

/// All prime bands up to rotation, found by growing candidate
/// representatives leftwards up to `bound` syllables (0 = default bound).
/// Every direct-then-inverse pair occurs at most once in a prime band, so
/// words repeating such a pair are pruned.
inline std::vector<Band> enumerate_prime_bands(const Algebra& A, std::size_t bound = 0) {
  if (bound == 0) bound = prime_band_length_bound(A);
  std::vector<Band> out;
  std::set<std::vector<Syllable>> seen;
  std::vector<Syllable> w;
  std::set<std::pair<Syllable, Syllable>> shapes;
  std::function<void()> grow = [&]() {
    if (w.size() >= 2 && w.front().direct && is_band(A, w)) {
      auto canon = canonical_rotation(A, w);
      if (canon == w && !seen.count(w) && is_prime_band_word(A, w)) {
        seen.insert(w);
        out.push_back({Word::of(w), w.size(), true});
      }
    }
    if (w.size() >= bound) return;
    for (int a = 0; a < A.num_arrows(); ++a)
      for (bool d : {true, false}) {
        Syllable x{a, d};
        if (!can_prepend(A, x, w)) continue;
        bool new_shape = d && !w.front().direct;
        std::pair<Syllable, Syllable> shape{x, w.front()};
        if (new_shape && shapes.count(shape)) continue;
        if (new_shape) shapes.insert(shape);
        w.insert(w.begin(), x);
        grow();
        w.erase(w.begin());
        if (new_shape) shapes.erase(shape);
      }
  };
  for (int a = 0; a < A.num_arrows(); ++a) {
    w = {{a, false}};
    if (can_prepend(A, w[0], {})) grow();
  }
  std::sort(out.begin(), out.end(),
            [&](const Band& x, const Band& y) { return detail::order_bands(A, x, y); });
  return out;
}

/// All bands of length <= max_len up to rotation, prime or not.
inline std::vector<Band> enumerate_bands(const Algebra& A, std::size_t max_len) {
  std::vector<Band> out;
  std::set<std::vector<Syllable>> seen;
  for (auto& w : enumerate_strings(A, max_len)) {
    if (w.size() < 2 || !w.syl.front().direct || w.syl.back().direct || !is_band(A, w)) continue;
    auto canon = canonical_rotation(A, w.syl);
    if (!seen.insert(canon).second) continue;
    out.push_back({Word::of(canon), canon.size(), is_prime_band_word(A, canon)});
  }
  std::sort(out.begin(), out.end(),
            [&](const Band& x, const Band& y) { return detail::order_bands(A, x, y); });
  return out;
}

struct BandFreeCatalog {
  std::vector<Word> strings;  // lazy paths first, then by length
  std::size_t length_bound = 0;
  std::size_t longest = 0;

  bool contains(const Word& w) const {
    return std::binary_search(strings.begin(), strings.end(), w, order);
  }
  static bool order(const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  }
};

/// All band-free strings, including lazy paths. Strings are grown
/// leftwards and a branch stops at the first band rotation; this is
/// complete because band-free strings are closed under taking suffixes.
inline BandFreeCatalog enumerate_band_free_strings(const Algebra& A) {
  BandFreeCatalog cat;
  cat.length_bound = band_free_length_bound(A);
  for (int v = 0; v < A.num_vertices(); ++v)
    for (int i : {1, -1}) cat.strings.push_back(Word::lazy(v, i));
  std::vector<std::vector<Syllable>> stack;
  for (int a = 0; a < A.num_arrows(); ++a)
    for (bool d : {true, false})
      if (can_prepend(A, {a, d}, {})) stack.push_back({{a, d}});
  while (!stack.empty()) {
    auto w = std::move(stack.back());
    stack.pop_back();
    cat.longest = std::max(cat.longest, w.size());
    cat.strings.push_back(Word::of(w));
    if (w.size() > cat.length_bound) continue;  // reported via `longest`
    for (int a = 0; a < A.num_arrows(); ++a)
      for (bool d : {true, false}) {
        Syllable x{a, d};
        if (!can_prepend(A, x, w)) continue;
        std::vector<Syllable> y{x};
        y.insert(y.end(), w.begin(), w.end());
        bool has_band = false;
        for (std::size_t len = 2; len <= y.size() && !has_band; ++len)
          has_band = is_band(A, std::vector<Syllable>(y.begin(),
                                                      y.begin() + static_cast<long>(len)));
        if (!has_band) stack.push_back(std::move(y));
      }
  }
  std::sort(cat.strings.begin(), cat.strings.end(), BandFreeCatalog::order);
  return cat;
}

struct BandOccurrence {
  Band band;
  std::size_t position = 0;  // written index of the leftmost syllable
  std::size_t length = 0;
};

/// The leftmost-starting, then shortest, subword that is a band rotation.
inline std::optional<BandOccurrence> contains_band_rotation(const Algebra& A, const Word& u) {
  for (std::size_t b = 0; b < u.size(); ++b)
    for (std::size_t len = 2; b + len <= u.size(); ++len) {
      std::vector<Syllable> s(u.syl.begin() + static_cast<long>(b),
                              u.syl.begin() + static_cast<long>(b + len));
      if (is_band(A, s)) return BandOccurrence{canonical_band(A, Word::of(s)), b, len};
    }
  return std::nullopt;
}

inline bool is_band_free(const Algebra& A, const Word& u) {
  return !contains_band_rotation(A, u).has_value();
}

/// Power b^m of a band word; m = 0 is the lazy path at its endpoint
/// absorbable on both sides, negative m uses the inverse.
inline Word band_power(const Algebra& A, const Word& b, int m) {
  if (m == 0) return subword(A, b, 0, 0);
  Word base = m > 0 ? b : invert(b);
  std::vector<Syllable> s;
  for (int k = 0; k < std::abs(m); ++k) s.insert(s.end(), base.syl.begin(), base.syl.end());
  return Word::of(std::move(s));
}

}  // namespace stralg
