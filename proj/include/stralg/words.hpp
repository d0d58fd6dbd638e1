#pragma once

// Strings over a string algebra: syllables, lazy paths, validity,
// concatenation, inversion and substring extraction.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stralg/core.hpp"
#include "stralg/presentation.hpp"

namespace stralg {

struct Syllable {
  int arrow = 0;
  bool direct = true;

  Syllable inverse() const { return {arrow, !direct}; }
  auto operator<=>(const Syllable&) const = default;
};

/// A string alpha_n ... alpha_1 stored in written order: syl[0] is the
/// leftmost syllable alpha_n and syl.back() is alpha_1. An empty syllable
/// list is the lazy path 1_(vertex, sign).
struct Word {
  std::vector<Syllable> syl;
  int vertex = -1;  // lazy paths only
  int sign = 0;     // lazy paths only

  static Word lazy(int v, int i) { return Word{{}, v, i}; }
  static Word of(std::vector<Syllable> s) { return Word{std::move(s), -1, 0}; }

  bool is_lazy() const { return syl.empty(); }
  std::size_t size() const { return syl.size(); }
  const Syllable& operator[](std::size_t k) const { return syl[k]; }
  bool all_direct() const {
    return std::all_of(syl.begin(), syl.end(), [](auto s) { return s.direct; });
  }
  bool all_inverse() const {
    return std::all_of(syl.begin(), syl.end(), [](auto s) { return !s.direct; });
  }

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;
};

/// A validated presentation with its sign functions and a few cached
/// numbers used throughout.
class Algebra {
 public:
  explicit Algebra(QuiverPresentation p) : p_(std::move(p)) {
    auto rep = validate_string_algebra(p_);
    if (!rep.is_string_algebra)
      throw Error(ErrorKind::Precondition,
                  "not a string algebra: " +
                      std::string(to_string(rep.violations[0].axiom)) + " (" +
                      rep.violations[0].locus + ")");
    signs_ = derive_signs(p_);
    for (auto& r : p_.relations) max_rel_ = std::max(max_rel_, r.size());
    std::vector<int> order(p_.arrows.size());
    for (std::size_t a = 0; a < order.size(); ++a) order[a] = static_cast<int>(a);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return p_.arrows[x].id < p_.arrows[y].id;
    });
    rank_.resize(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) rank_[order[k]] = static_cast<int>(k);
    compute_max_direct();
  }

  const QuiverPresentation& presentation() const { return p_; }
  const SignAssignment& signs() const { return signs_; }
  int num_arrows() const { return p_.num_arrows(); }
  int num_vertices() const { return p_.num_vertices(); }
  const std::string& arrow_id(int a) const { return p_.arrows[a].id; }
  const std::string& vertex_id(int v) const { return p_.vertices[v]; }

  // syllable data
  int src(Syllable s) const {
    return s.direct ? p_.arrows[s.arrow].source : p_.arrows[s.arrow].target;
  }
  int tgt(Syllable s) const {
    return s.direct ? p_.arrows[s.arrow].target : p_.arrows[s.arrow].source;
  }
  int sigma(Syllable s) const {
    return s.direct ? signs_.sigma[s.arrow] : signs_.epsilon[s.arrow];
  }
  int epsilon(Syllable s) const {
    return s.direct ? signs_.epsilon[s.arrow] : signs_.sigma[s.arrow];
  }

  /// Fixed syllable order: direct before inverse, then arrow id.
  bool syllable_less(Syllable x, Syllable y) const {
    if (x.direct != y.direct) return x.direct;
    return rank_[x.arrow] < rank_[y.arrow];
  }
  bool syllables_less(const std::vector<Syllable>& x,
                      const std::vector<Syllable>& y) const {
    return std::lexicographical_compare(
        x.begin(), x.end(), y.begin(), y.end(),
        [&](Syllable a, Syllable b) { return syllable_less(a, b); });
  }

  std::size_t max_relation_length() const { return max_rel_; }
  /// Length of the longest relation-avoiding direct path.
  std::size_t max_direct_path() const { return max_direct_; }

  // True iff the written-order arrow sequence contains a relation.
  bool contains_relation(const std::vector<int>& written) const {
    for (auto& r : p_.relations)
      if (std::search(written.begin(), written.end(), r.begin(), r.end()) !=
          written.end())
        return true;
    return false;
  }

 private:
  void compute_max_direct() {
    // longest direct string: DFS over direct words, finite by validation
    std::vector<std::vector<int>> stack;
    for (int a = 0; a < num_arrows(); ++a)
      if (!contains_relation({a})) stack.push_back({a});
    while (!stack.empty()) {
      auto w = std::move(stack.back());
      stack.pop_back();
      max_direct_ = std::max(max_direct_, w.size());
      for (int b = 0; b < num_arrows(); ++b) {
        if (p_.arrows[b].source != p_.arrows[w.front()].target) continue;
        std::vector<int> x{b};
        x.insert(x.end(), w.begin(), w.end());
        std::vector<int> head(x.begin(),
                              x.begin() + static_cast<long>(std::min(x.size(), max_rel_)));
        if (!contains_relation(head)) stack.push_back(std::move(x));
      }
    }
  }

  QuiverPresentation p_;
  SignAssignment signs_;
  std::vector<int> rank_;
  std::size_t max_rel_ = 0;
  std::size_t max_direct_ = 0;
};

// ---- endpoint and sign data --------------------------------------------

inline int source(const Algebra& A, const Word& u) {
  return u.is_lazy() ? u.vertex : A.src(u.syl.back());
}
inline int target(const Algebra& A, const Word& u) {
  return u.is_lazy() ? u.vertex : A.tgt(u.syl.front());
}
inline int sigma(const Algebra& A, const Word& u) {
  return u.is_lazy() ? -u.sign : A.sigma(u.syl.back());
}
inline int epsilon(const Algebra& A, const Word& u) {
  return u.is_lazy() ? u.sign : A.epsilon(u.syl.front());
}

struct SignData {
  int source, target, sigma, epsilon;
};
inline SignData sign_data(const Algebra& A, const Word& u) {
  return {source(A, u), target(A, u), sigma(A, u), epsilon(A, u)};
}

// ---- validity ------------------------------------------------------------

namespace detail {

// Relation check for a single maximal run [b, e) of equal direction.
inline bool run_ok(const Algebra& A, const std::vector<Syllable>& s,
                   std::size_t b, std::size_t e) {
  std::vector<int> arrows;
  for (std::size_t k = b; k < e; ++k) arrows.push_back(s[k].arrow);
  if (!s[b].direct) std::reverse(arrows.begin(), arrows.end());
  return !A.contains_relation(arrows);
}

}  // namespace detail

/// True iff the syllable sequence is a (non-lazy) string.
inline bool is_string(const Algebra& A, const std::vector<Syllable>& s) {
  if (s.empty()) return false;
  for (auto& x : s)
    if (x.arrow < 0 || x.arrow >= A.num_arrows()) return false;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    if (A.src(s[k]) != A.tgt(s[k + 1])) return false;
    if (s[k] == s[k + 1].inverse()) return false;
  }
  for (std::size_t b = 0; b < s.size();) {
    std::size_t e = b;
    while (e < s.size() && s[e].direct == s[b].direct) ++e;
    if (!detail::run_ok(A, s, b, e)) return false;
    b = e;
  }
  return true;
}

inline bool is_valid(const Algebra& A, const Word& u) {
  if (u.is_lazy())
    return u.vertex >= 0 && u.vertex < A.num_vertices() &&
           (u.sign == 1 || u.sign == -1);
  return is_string(A, u.syl);
}

/// Whether x placed left of the string w (x w) is again a string;
/// only the seam window is inspected.
inline bool can_prepend(const Algebra& A, Syllable x, const std::vector<Syllable>& w) {
  if (w.empty()) return !A.contains_relation({x.arrow});
  if (A.src(x) != A.tgt(w.front()) || x == w.front().inverse()) return false;
  std::size_t L = std::max<std::size_t>(A.max_relation_length(), 1);
  std::vector<int> run{x.arrow};
  for (std::size_t k = 0; k < w.size() && run.size() < L && w[k].direct == x.direct; ++k)
    run.push_back(w[k].arrow);
  if (!x.direct) std::reverse(run.begin(), run.end());
  return !A.contains_relation(run);
}

/// Whether w x (x on the right) is a string.
inline bool can_append(const Algebra& A, const std::vector<Syllable>& w, Syllable x) {
  if (w.empty()) return !A.contains_relation({x.arrow});
  if (A.src(w.back()) != A.tgt(x) || w.back() == x.inverse()) return false;
  std::size_t L = std::max<std::size_t>(A.max_relation_length(), 1);
  std::vector<int> run{x.arrow};
  for (std::size_t k = w.size(); k-- > 0 && run.size() < L && w[k].direct == x.direct;)
    run.insert(run.begin(), w[k].arrow);
  if (!x.direct) std::reverse(run.begin(), run.end());
  return !A.contains_relation(run);
}

// ---- composition -----------------------------------------------------------

/// v u as a string, absorbing lazy paths; nullopt when undefined.
inline std::optional<Word> try_concat(const Algebra& A, const Word& v, const Word& u) {
  if (v.is_lazy() && u.is_lazy()) {
    if (v.vertex == u.vertex && v.sign == u.sign) return v;
    return std::nullopt;
  }
  if (v.is_lazy()) {
    if (target(A, u) == v.vertex && epsilon(A, u) == v.sign) return u;
    return std::nullopt;
  }
  if (u.is_lazy()) {
    if (source(A, v) == u.vertex && sigma(A, v) == -u.sign) return v;
    return std::nullopt;
  }
  if (A.src(v.syl.back()) != A.tgt(u.syl.front())) return std::nullopt;
  std::vector<Syllable> s = v.syl;
  s.insert(s.end(), u.syl.begin(), u.syl.end());
  // only the runs through the seam can gain a relation
  std::size_t seam = v.size();
  if (s[seam - 1] == s[seam].inverse()) return std::nullopt;
  std::size_t b = seam - 1, e = seam;
  if (s[b].direct == s[e].direct) {
    while (b > 0 && s[b - 1].direct == s[seam].direct) --b;
    while (e < s.size() && s[e].direct == s[seam].direct) ++e;
    if (!detail::run_ok(A, s, b, e)) return std::nullopt;
  }
  return Word::of(std::move(s));
}

inline Word concat(const Algebra& A, const Word& v, const Word& u) {
  if (v.is_lazy() || u.is_lazy() || A.src(v.syl.back()) != A.tgt(u.syl.front())) {
    if (auto w = try_concat(A, v, u)) return *w;
    throw Error(ErrorKind::NotComposable, "endpoints or signs do not match");
  }
  if (auto w = try_concat(A, v, u)) return *w;
  throw Error(ErrorKind::NotAString, "concatenation is not a string");
}

inline bool defined(const Algebra& A, const Word& v, const Word& u) {
  return try_concat(A, v, u).has_value();
}

inline Word invert(const Word& u) {
  if (u.is_lazy()) return Word::lazy(u.vertex, -u.sign);
  std::vector<Syllable> s(u.syl.rbegin(), u.syl.rend());
  for (auto& x : s) x.direct = !x.direct;
  return Word::of(std::move(s));
}

/// Contiguous written-order subword [b, e); empty ranges give the lazy path
/// sitting at that position, with the sign making it absorbable.
inline Word subword(const Algebra& A, const Word& u, std::size_t b, std::size_t e) {
  if (u.is_lazy()) return u;
  if (b < e)
    return Word::of(std::vector<Syllable>(u.syl.begin() + static_cast<long>(b),
                                          u.syl.begin() + static_cast<long>(e)));
  if (b < u.size())
    return Word::lazy(A.tgt(u.syl[b]), A.epsilon(u.syl[b]));
  return Word::lazy(A.src(u.syl.back()), -A.sigma(u.syl.back()));
}

// ---- substrings --------------------------------------------------------------

enum class SubstringKind { Image, Factor };

struct SubstringWitness {
  std::size_t start = 0;  // written index of the leftmost syllable
  std::size_t end = 0;    // one past the rightmost; start == end is lazy
  SubstringKind kind = SubstringKind::Image;
  bool operator==(const SubstringWitness&) const = default;
};

namespace detail {

inline std::vector<SubstringWitness> substrings(const Word& u, SubstringKind kind,
                                                bool with_lazy) {
  std::vector<SubstringWitness> out;
  const std::size_t n = u.size();
  // image: left neighbour inverse (or none), right neighbour direct (or none)
  bool want_left_direct = kind == SubstringKind::Factor;
  auto left_ok = [&](std::size_t b) {
    return b == 0 || u.syl[b - 1].direct == want_left_direct;
  };
  auto right_ok = [&](std::size_t e) {
    return e == n || u.syl[e].direct != want_left_direct;
  };
  for (std::size_t b = 0; b <= n; ++b)
    for (std::size_t e = b; e <= n; ++e) {
      if (b == e && (!with_lazy)) continue;
      if (b == e && n == 0) {
        out.push_back({0, 0, kind});
        continue;
      }
      if (left_ok(b) && right_ok(e)) out.push_back({b, e, kind});
    }
  return out;
}

}  // namespace detail

inline std::vector<SubstringWitness> image_substrings(const Word& u,
                                                      bool with_lazy = false) {
  return detail::substrings(u, SubstringKind::Image, with_lazy);
}
inline std::vector<SubstringWitness> factor_substrings(const Word& u,
                                                       bool with_lazy = false) {
  return detail::substrings(u, SubstringKind::Factor, with_lazy);
}

// ---- literals -------------------------------------------------------------------

inline std::string format_syllable(const Algebra& A, Syllable s) {
  return A.arrow_id(s.arrow) + (s.direct ? "" : "'");
}

inline std::string format_word(const Algebra& A, const Word& u) {
  if (u.is_lazy())
    return "1(" + A.vertex_id(u.vertex) + "," + (u.sign > 0 ? "+" : "-") + ")";
  std::string out;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (k) out += ' ';
    out += format_syllable(A, u.syl[k]);
  }
  return out;
}

/// Parses a word literal without checking validity.
inline Word parse_word_raw(const Algebra& A, std::string_view text) {
  std::string t = detail::trim(text);
  if (t.rfind("1(", 0) == 0) {
    auto comma = t.find(',');
    if (t.back() != ')' || comma == std::string::npos)
      throw Error(ErrorKind::Syntax, "bad lazy path literal '" + t + "'");
    std::string v = detail::trim(t.substr(2, comma - 2));
    std::string s = detail::trim(t.substr(comma + 1, t.size() - comma - 2));
    int vi = A.presentation().vertex_index(v);
    if (vi < 0) throw Error(ErrorKind::UnknownId, "unknown vertex '" + v + "'");
    int sign = 0;
    if (s == "+" || s == "1" || s == "+1") sign = 1;
    else if (s == "-" || s == "-1") sign = -1;
    else throw Error(ErrorKind::Syntax, "bad lazy sign '" + s + "'");
    return Word::lazy(vi, sign);
  }
  std::vector<Syllable> syl;
  for (auto& tok : detail::split_ws(t)) {
    bool direct = true;
    std::string id = tok;
    if (!id.empty() && id.back() == '\'') {
      direct = false;
      id.pop_back();
    }
    int a = A.presentation().arrow_index(id);
    if (a < 0) throw Error(ErrorKind::UnknownId, "unknown arrow '" + id + "'");
    syl.push_back({a, direct});
  }
  if (syl.empty()) throw Error(ErrorKind::Syntax, "empty word literal");
  return Word::of(std::move(syl));
}

/// Parses a word literal and requires it to be a string.
inline Word parse_word(const Algebra& A, std::string_view text) {
  Word w = parse_word_raw(A, text);
  if (!w.is_lazy()) {
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
      if (A.src(w.syl[k]) != A.tgt(w.syl[k + 1]))
        throw Error(ErrorKind::NotComposable,
                    "'" + std::string(text) + "' is not composable");
    if (!is_string(A, w.syl))
      throw Error(ErrorKind::NotAString, "'" + std::string(text) + "' is not a string");
  }
  return w;
}

// ---- enumeration -------------------------------------------------------------

/// All strings of length <= max_len including the lazy paths. With
/// collapse_inverses only the smaller of u, u^-1 is kept (lazy paths kept).
inline std::vector<Word> enumerate_strings(const Algebra& A, std::size_t max_len,
                                           bool collapse_inverses = false) {
  std::vector<Word> out;
  for (int v = 0; v < A.num_vertices(); ++v)
    for (int i : {1, -1}) out.push_back(Word::lazy(v, i));
  std::vector<std::vector<Syllable>> layer;
  for (int a = 0; a < A.num_arrows(); ++a)
    for (bool d : {true, false})
      if (max_len >= 1 && can_prepend(A, {a, d}, {})) layer.push_back({{a, d}});
  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    std::vector<std::vector<Syllable>> next;
    for (auto& w : layer) {
      out.push_back(Word::of(w));
      if (len == max_len) continue;
      for (int a = 0; a < A.num_arrows(); ++a)
        for (bool d : {true, false})
          if (can_prepend(A, {a, d}, w)) {
            std::vector<Syllable> x{{a, d}};
            x.insert(x.end(), w.begin(), w.end());
            next.push_back(std::move(x));
          }
    }
    layer = std::move(next);
  }
  if (collapse_inverses) {
    std::vector<Word> kept;
    for (auto& w : out)
      if (w.is_lazy() || !(invert(w) < w)) kept.push_back(w);
    out = std::move(kept);
  }
  std::sort(out.begin(), out.end(), [](const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

}  // namespace stralg
