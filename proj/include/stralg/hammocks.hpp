#pragma once

// Hammock orders and the neighbour operators l, lbar, r, rbar.
//
// H_l(v, i) = { u : s(u) = v, sigma(u) = -i }, i.e. the strings u with
// u 1_(v,i) defined; H_l(v) is H_l(v, 1). H_r(v, i) consists of the
// inverses of H_l(v, i).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stralg/bands.hpp"

namespace stralg {

enum class Side { Left, Right };
enum class Op { L, LBar, R, RBar };

inline std::string_view to_string(Op op) {
  switch (op) {
    case Op::L: return "l";
    case Op::LBar: return "lbar";
    case Op::R: return "r";
    case Op::RBar: return "rbar";
  }
  return "?";
}

inline Op parse_op(std::string_view s) {
  if (s == "l") return Op::L;
  if (s == "lbar") return Op::LBar;
  if (s == "r") return Op::R;
  if (s == "rbar") return Op::RBar;
  throw Error(ErrorKind::Syntax, "unknown operator '" + std::string(s) + "'");
}

struct HammockRef {
  int vertex = 0;
  Side side = Side::Left;
  int sign = 1;

  Word base() const { return Word::lazy(vertex, sign); }
};

inline bool in_hammock(const Algebra& A, const Word& u, const HammockRef& h) {
  if (h.side == Side::Left) return source(A, u) == h.vertex && sigma(A, u) == -h.sign;
  return target(A, u) == h.vertex && epsilon(A, u) == h.sign;
}

/// The left hammock containing u.
inline HammockRef left_hammock_of(const Algebra& A, const Word& u) {
  return {source(A, u), Side::Left, -sigma(A, u)};
}
inline HammockRef right_hammock_of(const Algebra& A, const Word& u) {
  return {target(A, u), Side::Right, epsilon(A, u)};
}

// ---- order -----------------------------------------------------------------

namespace detail {

// Reading leftwards from the common suffix: inverse > nothing > direct.
inline int compare_left(const Word& u, const Word& w) {
  std::size_t k = 0;
  while (k < u.size() && k < w.size() && u.syl[u.size() - 1 - k] == w.syl[w.size() - 1 - k])
    ++k;
  auto rank = [&](const Word& x) {
    if (k == x.size()) return 0;
    return x.syl[x.size() - 1 - k].direct ? -1 : 1;
  };
  int ru = rank(u), rw = rank(w);
  if (ru == rw) {
    // distinct syllables of equal kind cannot both extend a common suffix
    if (k < u.size() && k < w.size())
      throw Error(ErrorKind::Internal, "hammock comparison found two extensions");
    return 0;
  }
  return ru < rw ? -1 : 1;
}

}  // namespace detail

/// -1, 0 or 1 as u is less than, equal to or greater than w in h.
inline int compare(const Algebra& A, const Word& u, const Word& w, const HammockRef& h) {
  if (!in_hammock(A, u, h) || !in_hammock(A, w, h))
    throw Error(ErrorKind::NotInHammock, "word not in the requested hammock");
  if (h.side == Side::Left) return detail::compare_left(u, w);
  return detail::compare_left(invert(u), invert(w));
}

// ---- operators --------------------------------------------------------------

/// x u for a single syllable x, respecting the sign of a lazy u.
inline std::optional<Word> prepend(const Algebra& A, Syllable x, const Word& u) {
  if (u.is_lazy()) {
    if (A.src(x) != u.vertex || A.sigma(x) != -u.sign) return std::nullopt;
    if (!can_prepend(A, x, {})) return std::nullopt;
    return Word::of({x});
  }
  if (!can_prepend(A, x, u.syl)) return std::nullopt;
  Word w = u;
  w.syl.insert(w.syl.begin(), x);
  return w;
}

/// The unique syllable of the given direction that can be put left of u.
inline std::optional<Syllable> left_extension(const Algebra& A, const Word& u, bool direct) {
  std::optional<Syllable> found;
  for (int a = 0; a < A.num_arrows(); ++a)
    if (prepend(A, {a, direct}, u)) {
      ensure(!found, "two left extensions of the same direction");
      found = Syllable{a, direct};
    }
  return found;
}

/// Left extension of u by one syllable of direction `first_direct`
/// followed by a maximal run of the opposite direction; the run is returned
/// separately so graded operators can truncate it.
struct LeftStep {
  Word result;
  std::size_t run = 0;  // length of the maximal run added after the hinge
};

inline std::optional<LeftStep> left_step(const Algebra& A, const Word& u, bool first_direct) {
  auto hinge = left_extension(A, u, first_direct);
  if (!hinge) return std::nullopt;
  Word w = *prepend(A, *hinge, u);
  std::size_t run = 0;
  while (auto x = left_extension(A, w, !first_direct)) {
    w = *prepend(A, *x, w);
    ++run;
    ensure(run <= w.size(), "unbounded run");
  }
  return LeftStep{w, run};
}

inline std::optional<Word> op_l(const Algebra& A, const Word& u) {
  if (auto s = left_step(A, u, false)) return s->result;
  return std::nullopt;
}
inline std::optional<Word> op_lbar(const Algebra& A, const Word& u) {
  if (auto s = left_step(A, u, true)) return s->result;
  return std::nullopt;
}
inline std::optional<Word> op_r(const Algebra& A, const Word& u) {
  if (auto w = op_l(A, invert(u))) return invert(*w);
  return std::nullopt;
}
inline std::optional<Word> op_rbar(const Algebra& A, const Word& u) {
  if (auto w = op_lbar(A, invert(u))) return invert(*w);
  return std::nullopt;
}

inline std::optional<Word> apply(const Algebra& A, Op op, const Word& u) {
  switch (op) {
    case Op::L: return op_l(A, u);
    case Op::LBar: return op_lbar(A, u);
    case Op::R: return op_r(A, u);
    case Op::RBar: return op_rbar(A, u);
  }
  return std::nullopt;
}

/// Number k of direct syllables in front of the inverse hinge of l(u).
inline std::optional<std::size_t> l_grade_limit(const Algebra& A, const Word& u) {
  if (auto s = left_step(A, u, false)) return s->run;
  return std::nullopt;
}

/// l_i(u): l(u) with its i leftmost direct syllables removed, 0 <= i <= k.
inline Word op_l_graded(const Algebra& A, const Word& u, std::size_t i) {
  auto s = left_step(A, u, false);
  if (!s) throw Error(ErrorKind::UndefinedOperator, "l is undefined here");
  if (i > s->run)
    throw Error(ErrorKind::IndexOutOfRange,
                "grade " + std::to_string(i) + " exceeds " + std::to_string(s->run));
  Word w = s->result;
  w.syl.erase(w.syl.begin(), w.syl.begin() + static_cast<long>(i));
  return w;
}

/// lbar_j(u): lbar(u) with its j leftmost inverse syllables removed.
inline Word op_lbar_graded(const Algebra& A, const Word& u, std::size_t j) {
  auto s = left_step(A, u, true);
  if (!s) throw Error(ErrorKind::UndefinedOperator, "lbar is undefined here");
  if (j > s->run)
    throw Error(ErrorKind::IndexOutOfRange,
                "grade " + std::to_string(j) + " exceeds " + std::to_string(s->run));
  Word w = s->result;
  w.syl.erase(w.syl.begin(), w.syl.begin() + static_cast<long>(j));
  return w;
}

// ---- successors -----------------------------------------------------------------

namespace detail {

// v with step(v) == u, where step adds a hinge of direction hinge_direct.
inline std::optional<Word> undo_left_step(const Algebra& A, const Word& u, bool hinge_direct,
                                          const HammockRef& h) {
  if (u.is_lazy()) return std::nullopt;
  std::size_t k = 0;
  while (k < u.size() && u.syl[k].direct != hinge_direct) ++k;
  if (k == u.size()) return std::nullopt;
  Word v = u.size() == k + 1 ? h.base()
                             : Word::of(std::vector<Syllable>(
                                   u.syl.begin() + static_cast<long>(k + 1), u.syl.end()));
  auto back = left_step(A, v, hinge_direct);
  if (back && back->result == u) return v;
  return std::nullopt;
}

}  // namespace detail

/// Direct successor of u in h, if any.
inline std::optional<Word> successor(const Algebra& A, const Word& u, const HammockRef& h) {
  if (!in_hammock(A, u, h)) throw Error(ErrorKind::NotInHammock, "word not in hammock");
  if (h.side == Side::Right) {
    HammockRef hl{h.vertex, Side::Left, -h.sign};
    if (auto w = successor(A, invert(u), hl)) return invert(*w);
    return std::nullopt;
  }
  if (auto w = op_l(A, u)) return w;
  return detail::undo_left_step(A, u, true, h);
}

/// Direct predecessor of u in h, if any.
inline std::optional<Word> predecessor(const Algebra& A, const Word& u, const HammockRef& h) {
  if (!in_hammock(A, u, h)) throw Error(ErrorKind::NotInHammock, "word not in hammock");
  if (h.side == Side::Right) {
    HammockRef hl{h.vertex, Side::Left, -h.sign};
    if (auto w = predecessor(A, invert(u), hl)) return invert(*w);
    return std::nullopt;
  }
  if (auto w = op_lbar(A, u)) return w;
  return detail::undo_left_step(A, u, false, h);
}

// ---- one-sided expansions ---------------------------------------------------------

struct ExpansionResult {
  bool defined = false;
  std::size_t undefined_at_step = 0;  // 1-based failing application
  Word preperiod;                     // syllables between the period and the start
  Word period;                        // written left of the preperiod, repeated forever
  Word start;
  Op op = Op::L;
};

/// Syllables to inspect when deciding a repeated state.
inline std::size_t expansion_window(const Algebra& A) {
  return 2 * A.max_relation_length() + A.max_direct_path() + 2;
}

namespace detail {

inline std::vector<Syllable> primitive_root(const std::vector<Syllable>& s) {
  const std::size_t n = s.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (std::size_t k = d; k < n && periodic; ++k) periodic = s[k] == s[k - d];
    if (periodic) return std::vector<Syllable>(s.begin(), s.begin() + static_cast<long>(d));
  }
  return s;
}

// Expansion of any step that only grows words on the left and depends on
// a left window of W syllables.
template <class Step>
ExpansionResult expand_left_with(const Word& u, Step step_fn, std::size_t W,
                                 std::size_t max_steps) {
  ExpansionResult res;
  res.start = u;
  std::map<std::vector<Syllable>, std::pair<std::size_t, std::size_t>> seen;  // window -> (step, length)
  Word cur = u;
  for (std::size_t step = 0; step <= max_steps; ++step) {
    if (cur.size() >= W) {
      std::vector<Syllable> state(cur.syl.begin(), cur.syl.begin() + static_cast<long>(W));
      auto it = seen.find(state);
      if (it != seen.end()) {
        std::size_t old_len = it->second.second;
        std::size_t added_before = old_len - u.size();
        std::vector<Syllable> chunk(cur.syl.begin(),
                                    cur.syl.begin() + static_cast<long>(cur.size() - old_len));
        std::vector<Syllable> pre(cur.syl.begin() + static_cast<long>(cur.size() - old_len),
                                  cur.syl.begin() + static_cast<long>(cur.size() - old_len + added_before));
        auto period = primitive_root(chunk);
        while (true) {
          if (pre.size() >= period.size() &&
              std::equal(period.begin(), period.end(), pre.begin())) {
            pre.erase(pre.begin(), pre.begin() + static_cast<long>(period.size()));
          } else if (!pre.empty() && pre.front() == period.back()) {
            pre.erase(pre.begin());
            period.insert(period.begin(), period.back());
            period.pop_back();
          } else {
            break;
          }
        }
        res.defined = true;
        res.period = Word::of(period);
        res.preperiod = pre.empty() ? Word{} : Word::of(pre);
        return res;
      }
      seen.emplace(std::move(state), std::make_pair(step, cur.size()));
    }
    std::optional<Word> next = step_fn(cur);
    if (!next) {
      res.undefined_at_step = step + 1;
      return res;
    }
    ensure(next->size() > cur.size(), "expansion step must grow the word");
    cur = std::move(*next);
  }
  throw Error(ErrorKind::Internal, "expansion did not become periodic");
}

inline ExpansionResult expand_left(const Algebra& A, const Word& u, bool inverse_hinge,
                                   std::size_t max_steps) {
  auto step = [&](const Word& w) -> std::optional<Word> {
    auto next = left_step(A, w, !inverse_hinge);
    if (!next) return std::nullopt;
    return next->result;
  };
  auto res = expand_left_with(u, step, expansion_window(A), max_steps);
  res.op = inverse_hinge ? Op::L : Op::LBar;
  return res;
}

}  // namespace detail

/// <1>op(u): either the step at which op stops being defined, or the
/// eventually periodic limit. For l and lbar the limit is
/// ^oo(period) preperiod u; for r and rbar it is u preperiod period^oo.
inline ExpansionResult one_sided_expansion(const Algebra& A, const Word& u, Op op,
                                           std::size_t max_steps = 4096) {
  if (op == Op::L || op == Op::LBar)
    return detail::expand_left(A, u, op == Op::L, max_steps);
  auto res = detail::expand_left(A, invert(u), op == Op::R, max_steps);
  res.op = op;
  res.start = u;
  if (res.defined) {
    res.period = invert(res.period);
    if (!res.preperiod.syl.empty()) res.preperiod = invert(res.preperiod);
  }
  return res;
}

inline std::string format_expansion(const Algebra& A, const ExpansionResult& r) {
  if (!r.defined) return "undefined@" + std::to_string(r.undefined_at_step);
  std::string pre = r.preperiod.syl.empty() ? "" : format_word(A, r.preperiod) + ")·(";
  if (r.op == Op::L || r.op == Op::LBar)
    return "∞(" + format_word(A, r.period) + ")·(" + pre + format_word(A, r.start) + ")";
  return "(" + format_word(A, r.start) + (r.preperiod.syl.empty() ? "" : ")·(" + format_word(A, r.preperiod)) +
         ")·(" + format_word(A, r.period) + ")∞";
}

/// Finite window of <1>op(u): the start extended by `copies` periods.
inline Word expansion_window_word(const ExpansionResult& r, std::size_t copies) {
  std::vector<Syllable> s;
  bool left = r.op == Op::L || r.op == Op::LBar;
  for (std::size_t k = 0; k < copies; ++k) s.insert(s.end(), r.period.syl.begin(), r.period.syl.end());
  if (left) {
    s.insert(s.end(), r.preperiod.syl.begin(), r.preperiod.syl.end());
    s.insert(s.end(), r.start.syl.begin(), r.start.syl.end());
  } else {
    std::vector<Syllable> t = r.start.syl;
    t.insert(t.end(), r.preperiod.syl.begin(), r.preperiod.syl.end());
    t.insert(t.end(), s.begin(), s.end());
    s = std::move(t);
  }
  return s.empty() ? r.start : Word::of(std::move(s));
}

// ---- torsion-freeness ------------------------------------------------------------------

struct TorsionWitness {
  Word word;
  Op op;
};

struct TorsionReport {
  bool torsion_free = true;
  std::size_t window = 0;
  std::size_t population = 0;
  std::vector<TorsionWitness> witnesses;
};

inline std::size_t locality_window(const Algebra& A) {
  return A.max_relation_length() + A.max_direct_path();
}

/// Forward closure: whenever op(u) is defined so is op(op(u)), checked on
/// all strings of length at most 3W.
inline TorsionReport is_torsion_free(const Algebra& A, std::size_t max_len = 0) {
  TorsionReport rep;
  rep.window = locality_window(A);
  if (max_len == 0) max_len = 3 * rep.window;
  auto all = enumerate_strings(A, max_len);
  rep.population = all.size();
  for (auto& u : all)
    for (Op op : {Op::L, Op::LBar, Op::R, Op::RBar}) {
      auto once = apply(A, op, u);
      if (once && !apply(A, op, *once)) rep.witnesses.push_back({u, op});
    }
  rep.torsion_free = rep.witnesses.empty();
  return rep;
}

// ---- interval finiteness ----------------------------------------------------------------

struct IntervalWitness {
  Word band;  // rotation of a prime band
  Word z;     // band-free connector
  Syllable hinge;
  Word word;  // band z hinge x
};

/// Whether [u, x] (x = l_k(u)) or [x, u] (x = lbar_k(u)) is finite. It is
/// infinite iff some syllable alpha of the hinge direction extends x on the
/// left and band z alpha x is a string for a prime band rotation and a
/// band-free z.
inline std::optional<IntervalWitness> infinite_interval_witness(
    const Algebra& A, const Word& x, bool hinge_direct, const std::vector<Band>& primes,
    const BandFreeCatalog& cat) {
  auto alpha = left_extension(A, x, hinge_direct);
  if (!alpha) return std::nullopt;
  Word ax = *prepend(A, *alpha, x);
  for (auto& z : cat.strings) {
    auto zax = try_concat(A, z, ax);
    if (!zax) continue;
    for (auto& b : primes)
      for (std::size_t k = 0; k < b.rep.size(); ++k) {
        Word rot = Word::of(rotate_left(b.rep.syl, k));
        if (auto full = try_concat(A, rot, *zax)) return IntervalWitness{rot, z, *alpha, *full};
      }
  }
  return std::nullopt;
}

struct IntervalResult {
  bool finite = true;
  Word endpoint;
  std::optional<IntervalWitness> witness;
};

inline IntervalResult interval_is_finite(const Algebra& A, const Word& u, std::size_t k,
                                         bool bar, const std::vector<Band>& primes,
                                         const BandFreeCatalog& cat) {
  IntervalResult r;
  r.endpoint = bar ? op_lbar_graded(A, u, k) : op_l_graded(A, u, k);
  if (k == 0) return r;  // the run after the hinge is maximal
  r.witness = infinite_interval_witness(A, r.endpoint, !bar, primes, cat);
  r.finite = !r.witness.has_value();
  return r;
}

inline IntervalResult interval_is_finite(const Algebra& A, int vertex, int sign, std::size_t k) {
  return interval_is_finite(A, Word::lazy(vertex, sign), k, false, enumerate_prime_bands(A),
                            enumerate_band_free_strings(A));
}

}  // namespace stralg
