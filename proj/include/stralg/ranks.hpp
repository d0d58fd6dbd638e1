#pragma once

// Complex terms, recursive systems and rank classes of graph maps.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "stralg/generation.hpp"

namespace stralg {

/// A graded operator l_i, lbar_i (or r_i, rbar_i in factorization traces).
struct GradedOp {
  Op op = Op::L;
  std::size_t index = 0;

  bool operator==(const GradedOp&) const = default;
};

inline std::string format_graded(GradedOp g) {
  std::string s(to_string(g.op));
  if (g.index > 0) s += "_" + std::to_string(g.index);
  return s;
}

inline std::string format_factors(const std::vector<GradedOp>& fs) {
  std::string out;
  for (auto& g : fs) out += (out.empty() ? "" : " ") + format_graded(g);
  return out.empty() ? "id" : out;
}

enum class TermKind { L, LBar };

struct ComplexTerm {
  TermKind kind = TermKind::L;
  std::vector<GradedOp> factors;  // written order; the rightmost acts first
  // <first|second>: the fundamental solution y of <1>first(y) = <1>second(x)
  std::optional<std::pair<std::vector<GradedOp>, std::vector<GradedOp>>> bracket;
  int vertex = -1;
  int sign = 0;
};

inline std::string format_term(const Algebra& A, const ComplexTerm& t) {
  std::string body = t.bracket ? "<" + format_factors(t.bracket->first) + "|" +
                                     format_factors(t.bracket->second) + ">"
                               : format_factors(t.factors);
  return body + "(" + A.vertex_id(t.vertex) + "," + (t.sign > 0 ? "+" : "-") + ")";
}

inline std::optional<Word> apply_graded(const Algebra& A, GradedOp g, const Word& w) {
  if (g.op == Op::R || g.op == Op::RBar) {
    auto r = apply_graded(A, {g.op == Op::R ? Op::L : Op::LBar, g.index}, invert(w));
    if (!r) return std::nullopt;
    return invert(*r);
  }
  auto st = left_step(A, w, g.op == Op::LBar);
  if (!st || g.index > st->run) return std::nullopt;
  Word r = st->result;
  r.syl.erase(r.syl.begin(), r.syl.begin() + static_cast<long>(g.index));
  return r;
}

inline std::optional<Word> apply_factors(const Algebra& A, const std::vector<GradedOp>& fs,
                                         const Word& w) {
  std::optional<Word> cur = w;
  for (auto it = fs.rbegin(); it != fs.rend() && cur; ++it) cur = apply_graded(A, *it, *cur);
  return cur;
}

/// Graded left factors f with f(v) = u, where u = y v and the syllable of
/// y next to v is inverse (bar = false) or direct (bar = true).
inline std::vector<GradedOp> left_factors(const Algebra& A, const Word& v, const Word& u,
                                          bool bar) {
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::NotAnInclusionShape,
                 format_word(A, v) + " -> " + format_word(A, u) + ": " + why);
  };
  if (u == v) return {};
  if (u.is_lazy()) throw fail("target is shorter");
  std::vector<Syllable> y;
  if (v.is_lazy()) {
    if (!try_concat(A, u, v)) throw fail("target does not attach to the lazy path");
    y = u.syl;
  } else {
    if (u.size() <= v.size() ||
        !std::equal(v.syl.begin(), v.syl.end(), u.syl.end() - static_cast<long>(v.size())))
      throw fail("target does not end with the source");
    y.assign(u.syl.begin(), u.syl.end() - static_cast<long>(v.size()));
  }
  std::vector<GradedOp> ops;
  Word cur = v;
  std::size_t pos = y.size();
  while (pos > 0) {
    if (y[pos - 1].direct != bar) throw fail("wrong hinge direction");
    std::size_t q = pos - 1;
    while (q > 0 && y[q - 1].direct != bar) --q;
    const std::size_t chunk_run = pos - 1 - q;
    auto st = left_step(A, cur, bar);
    if (!st || st->run < chunk_run) throw fail("no matching operator step");
    GradedOp g{bar ? Op::LBar : Op::L, st->run - chunk_run};
    Word next = *apply_graded(A, g, cur);
    std::vector<Syllable> expect(y.begin() + static_cast<long>(q), y.end());
    expect.insert(expect.end(), v.syl.begin(), v.syl.end());
    if (next.syl != expect) throw fail("operator step disagrees with target");
    ops.insert(ops.begin(), g);
    cur = std::move(next);
    pos = q;
  }
  return ops;
}

inline std::pair<int, int> term_base(const Algebra& A, const Word& v) {
  if (v.is_lazy()) return {v.vertex, v.sign};
  return {source(A, v), -sigma(A, v)};
}

/// The l-term labelling the canonical inclusion M(v) -> M(u).
inline ComplexTerm inclusion_terms(const Algebra& A, const Word& v, const Word& u) {
  ComplexTerm t;
  t.kind = TermKind::L;
  t.factors = left_factors(A, v, u, false);
  std::tie(t.vertex, t.sign) = term_base(A, v);
  return t;
}

/// <1>f(x) for a composite f of left graded operators.
inline ExpansionResult expand_term(const Algebra& A, const std::vector<GradedOp>& fs,
                                   const Word& x, std::size_t max_steps = 4096) {
  ensure(!fs.empty(), "empty term has no expansion");
  auto step = [&](const Word& w) { return apply_factors(A, fs, w); };
  return detail::expand_left_with(x, step, expansion_window(A) * (fs.size() + 1), max_steps);
}

namespace detail {

inline std::vector<Syllable> left_window(const ExpansionResult& r, std::size_t len) {
  std::size_t tail = r.preperiod.size() + r.start.size();
  std::size_t copies = (len > tail ? (len - tail) / r.period.size() : 0) + 1;
  auto w = expansion_window_word(r, copies).syl;
  return std::vector<Syllable>(w.end() - static_cast<long>(std::min(len, w.size())), w.end());
}

}  // namespace detail

/// Equality of two left-infinite limits, both ending at the same place.
inline bool same_limit(const ExpansionResult& x, const ExpansionResult& y) {
  if (!x.defined || !y.defined) return false;
  std::size_t len = std::max(x.preperiod.size() + x.start.size(), y.preperiod.size() + y.start.size()) +
                    x.period.size() + y.period.size();
  return detail::left_window(x, len) == detail::left_window(y, len);
}

/// <mu|tau>(x): the shortest y ending in x with <1>mu(y) = <1>tau(x).
inline std::optional<Word> evaluate_bracket(const Algebra& A, const std::vector<GradedOp>& mu,
                                            const std::vector<GradedOp>& tau, const Word& x) {
  auto E = expand_term(A, tau, x);
  if (!E.defined) return std::nullopt;
  const std::size_t cap = E.preperiod.size() + x.size() + 3 * E.period.size() + expansion_window(A);
  auto win = detail::left_window(E, cap);
  for (std::size_t n = 0; x.size() + n <= win.size(); ++n) {
    Word y = n == 0 ? x
                    : Word::of(std::vector<Syllable>(win.end() - static_cast<long>(x.size() + n),
                                                     win.end()));
    if (same_limit(expand_term(A, mu, y), E)) return y;
  }
  return std::nullopt;
}

// ---- recursive systems ------------------------------------------------------------------

/// tau(1) = <mu|tau1 tau tau2>(1) at the base lazy path, together with the
/// bands used to build it.
struct RecursiveSystemWitness {
  ComplexTerm tau, tau1, tau2, mu;
  int vertex = -1, sign = 0;
  Word x, b, b_prime, v, b_double;
  ExpansionResult limit;  // <1>(tau1 tau tau2)(1)
  Word solution;          // fundamental solution; equals x

  std::vector<GradedOp> composite() const {
    std::vector<GradedOp> fs = tau1.factors;
    fs.insert(fs.end(), tau.factors.begin(), tau.factors.end());
    fs.insert(fs.end(), tau2.factors.begin(), tau2.factors.end());
    return fs;
  }
};

namespace detail {

// Rotations of the given band words that end with `tail`.
inline std::vector<Word> rotations_ending_with(const std::vector<Word>& bands, const Word& tail) {
  std::vector<Word> out;
  for (auto& b : bands) {
    if (b.size() < tail.size()) continue;
    for (std::size_t k = 0; k < b.size(); ++k) {
      auto r = rotate_left(b.syl, k);
      if (std::equal(tail.syl.begin(), tail.syl.end(), r.end() - static_cast<long>(tail.size()))) {
        Word w = Word::of(std::move(r));
        if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
      }
    }
  }
  return out;
}

inline std::vector<Syllable> cat_syl(std::initializer_list<const Word*> ws) {
  std::vector<Syllable> s;
  for (auto* w : ws) s.insert(s.end(), w->syl.begin(), w->syl.end());
  return s;
}

}  // namespace detail

/// Builds b, b' extending alpha x and beta x, a connector v with
/// b'' = b' v b a band, and searches an lbar-term mu so that x is the
/// fundamental solution of <1>mu(y) = <1>(tau1 tau tau2)(1).
inline std::optional<RecursiveSystemWitness> find_recursive_system(const Algebra& A,
                                                                   const BridgeSystem& S,
                                                                   const Word& x, int vertex,
                                                                   int sign) {
  Word base = Word::lazy(vertex, sign);
  if (x.is_lazy() || x.syl.back().direct)
    throw Error(ErrorKind::Precondition, "x must end in an inverse syllable");
  if (!try_concat(A, x, base))
    throw Error(ErrorKind::Precondition, "x does not attach to the base lazy path");
  auto alpha = left_extension(A, x, true);
  auto beta = left_extension(A, x, false);
  if (!alpha || !beta) return std::nullopt;
  Word ax = *prepend(A, *alpha, x), bx = *prepend(A, *beta, x);
  auto ea = is_extendable(A, S, ax), eb = is_extendable(A, S, bx);
  if (!ea.extendable || !eb.extendable) return std::nullopt;

  std::vector<Word> pool;
  for (auto& p : S.prime_bands()) pool.push_back(p.rep);
  std::vector<Word> pa = pool, pb = pool;
  pa.insert(pa.begin(), ea.band);
  pb.insert(pb.begin(), eb.band);
  auto bs = detail::rotations_ending_with(pa, ax);
  auto bps = detail::rotations_ending_with(pb, bx);
  auto shorter = [](const Word& p, const Word& q) { return p.size() < q.size(); };
  std::stable_sort(bs.begin(), bs.end(), shorter);
  std::stable_sort(bps.begin(), bps.end(), shorter);

  ComplexTerm tau = inclusion_terms(A, base, x);
  for (auto& b : bs)
    for (auto& bp : bps)
      for (auto& v : S.catalog().strings) {
        auto vb = try_concat(A, v, b);
        if (!vb) continue;
        auto bvb = try_concat(A, bp, *vb);
        if (!bvb || !is_band(A, bvb->syl)) continue;
        Word xvb = Word::of(detail::cat_syl({&x, &*vb}));
        std::vector<GradedOp> t2, tm, t1;
        try {
          t2 = left_factors(A, base, *vb, false);
          tm = left_factors(A, *vb, xvb, false);
          t1 = left_factors(A, xvb, *bvb, false);
        } catch (const Error&) {
          continue;
        }
        if (tm != tau.factors) continue;
        std::vector<GradedOp> T = t1;
        T.insert(T.end(), tm.begin(), tm.end());
        T.insert(T.end(), t2.begin(), t2.end());
        auto E = expand_term(A, T, base);
        if (!E.defined) continue;
        const std::size_t cap = E.preperiod.size() + 3 * E.period.size() + expansion_window(A);
        auto win = detail::left_window(E, cap);
        for (std::size_t n = 1; x.size() + n <= win.size(); ++n) {
          Word Y = Word::of(std::vector<Syllable>(win.end() - static_cast<long>(x.size() + n), win.end()));
          std::vector<GradedOp> mu;
          try {
            mu = left_factors(A, x, Y, true);
          } catch (const Error&) {
            continue;
          }
          auto sol = evaluate_bracket(A, mu, T, base);
          if (!sol || !(*sol == x)) continue;
          RecursiveSystemWitness w;
          w.tau = tau;
          w.tau1 = {TermKind::L, t1, std::nullopt, vertex, sign};
          w.tau2 = {TermKind::L, t2, std::nullopt, vertex, sign};
          w.mu = {TermKind::LBar, mu, std::nullopt, vertex, sign};
          w.vertex = vertex;
          w.sign = sign;
          w.x = x;
          w.b = b;
          w.b_prime = bp;
          w.v = v;
          w.b_double = *bvb;
          w.limit = E;
          w.solution = *sol;
          return w;
        }
      }
  return std::nullopt;
}

/// Re-evaluates both sides of the recursive equation.
inline bool verify_recursive_system(const Algebra& A, const RecursiveSystemWitness& w) {
  Word base = Word::lazy(w.vertex, w.sign);
  auto lhs = apply_factors(A, w.tau.factors, base);
  auto rhs = evaluate_bracket(A, w.mu.factors, w.composite(), base);
  return lhs && rhs && *lhs == *rhs && *lhs == w.x;
}

// ---- rank classes ---------------------------------------------------------------------

enum class RankClass { Finite, ExactlyOmega, ExactlyOmegaPlusOne, StableRadical, IndeterminateAtLeastOmega };

inline std::string_view to_string(RankClass c) {
  switch (c) {
    case RankClass::Finite: return "finite";
    case RankClass::ExactlyOmega: return "omega";
    case RankClass::ExactlyOmegaPlusOne: return "omega_plus_one";
    case RankClass::StableRadical: return "stable_radical";
    case RankClass::IndeterminateAtLeastOmega: return "indeterminate_at_least_omega";
  }
  return "?";
}

struct GraphMapDescriptor {
  enum class Type { SS, SB, BS, BB } type = Type::SS;
  Word w, v, u;           // SS: M(w) -> M(v) -> M(u)
  Word band, band2;       // SB: M(v) -> B(band); BS: B(band) -> M(v); BB: B(band) -> B(band2)
  bool hom_basis = false; // BB induced by a k[T,T^-1] basis element

  static GraphMapDescriptor ss(Word w, Word v, Word u) {
    GraphMapDescriptor d;
    d.type = Type::SS;
    d.w = std::move(w);
    d.v = std::move(v);
    d.u = std::move(u);
    return d;
  }
};

/// One graded step of a factorized graph map and its interval.
struct RankStep {
  GradedOp op;
  Word from, to;  // in the frame of the operator (right steps are inverted)
  bool finite = true;
  std::optional<IntervalWitness> interval;
};

struct RankResult {
  RankClass cls = RankClass::Finite;
  std::vector<RankStep> trace;
  std::optional<IntervalWitness> interval;
  std::optional<RecursiveSystemWitness> recursive;
  Word left_period, right_period;  // SB/BS: expansion periods on the omega path
  std::string reason;
};

enum class StableRank { Omega, OmegaPlusOne, OmegaPlusTwo };

inline std::string_view to_string(StableRank s) {
  switch (s) {
    case StableRank::Omega: return "omega";
    case StableRank::OmegaPlusOne: return "omega_plus_one";
    case StableRank::OmegaPlusTwo: return "omega_plus_two";
  }
  return "?";
}

struct BandMapWitness {
  Word band, v;
};

struct StableRankEstimate {
  StableRank value = StableRank::Omega;
  std::vector<BandMapWitness> sb_omega, bs_omega;  // M(v) -> B(b) and B(b) -> M(v) of rank omega
  std::optional<std::pair<BandMapWitness, BandMapWitness>> composable;  // (BS, SB) through M(v)
};

struct DichotomyAudit {
  std::size_t descriptors = 0;
  std::map<RankClass, std::size_t> counts;
  std::optional<GraphMapDescriptor> first_indeterminate;
};

namespace detail {

inline std::optional<std::pair<std::size_t, std::size_t>> find_occurrence(const Algebra& A,
                                                                          const Word& host,
                                                                          const Word& v,
                                                                          SubstringKind kind,
                                                                          bool interior) {
  auto ws = kind == SubstringKind::Image ? image_substrings(host, true) : factor_substrings(host, true);
  for (auto& s : ws) {
    if (interior && (s.start == 0 || s.end == host.size())) continue;
    if (s.end - s.start != v.size()) continue;
    if (subword(A, host, s.start, s.end) == v) return std::make_pair(s.start, s.end);
  }
  return std::nullopt;
}

inline std::vector<Syllable> repeat(const Word& b, std::size_t k) {
  std::vector<Syllable> s;
  for (std::size_t i = 0; i < k; ++i) s.insert(s.end(), b.syl.begin(), b.syl.end());
  return s;
}

// The rotation b' with <oo>period pre = <oo>b', if the limit is purely periodic.
inline std::optional<Word> periodic_left(const ExpansionResult& r) {
  if (!r.defined) return std::nullopt;
  const auto& P = r.period.syl;
  const auto& pre = r.preperiod.syl;
  auto Pm = repeat(r.period, pre.size() / P.size() + 2);
  if (!std::equal(pre.begin(), pre.end(), Pm.end() - static_cast<long>(pre.size()))) return std::nullopt;
  std::vector<Syllable> tail = Pm;
  tail.insert(tail.end(), pre.begin(), pre.end());
  return Word::of(std::vector<Syllable>(tail.end() - static_cast<long>(P.size()), tail.end()));
}

}  // namespace detail

/// Rank classification of graph maps, backed by the bridge system and the
/// classification of the algebra.
class RankAnalyzer {
 public:
  explicit RankAnalyzer(const Algebra& A) : A_(&A), S_(A), cls_(classify_algebra(A, S_)) {}
  explicit RankAnalyzer(Algebra&&) = delete;

  const Algebra& algebra() const { return *A_; }
  const BridgeSystem& bridges() const { return S_; }
  const AlgebraClassification& classification() const { return cls_; }

  /// Steps of M(v) -> M(u), v an image substring of u (or of u^-1).
  std::vector<RankStep> mono_steps(const Word& v, const Word& u) const {
    return host_steps(v, u, SubstringKind::Image);
  }
  /// Steps of M(w) -> M(v), v a factor substring of w (or of w^-1).
  std::vector<RankStep> epi_steps(const Word& w, const Word& v) const {
    return host_steps(v, w, SubstringKind::Factor);
  }

  RankResult classify_steps(std::vector<RankStep> steps) const {
    RankResult r;
    r.trace = std::move(steps);
    const RankStep* bad = nullptr;
    for (auto& s : r.trace)
      if (!s.finite) {
        bad = &s;
        break;
      }
    if (!bad) {
      r.cls = RankClass::Finite;
      r.reason = "every interval is finite";
      return r;
    }
    r.interval = bad->interval;
    // a recursive system for an inverse-hinged step, read off its added part
    for (auto& s : r.trace) {
      if (s.finite || s.op.op != Op::L && s.op.op != Op::R) continue;
      Word x = Word::of(std::vector<Syllable>(s.to.syl.begin(),
                                              s.to.syl.end() - static_cast<long>(s.from.size())));
      auto [bv, bs] = term_base(*A_, x);
      if (auto rec = recursive_for(x, bv, bs)) {
        r.recursive = rec;
        break;
      }
    }
    if (cls_.meta_torsion_free) {
      r.cls = RankClass::StableRadical;
      r.reason = "infinite interval in a meta-torsion-free algebra";
    } else if (r.recursive) {
      r.cls = RankClass::StableRadical;
      r.reason = "recursive system";
    } else {
      r.cls = RankClass::IndeterminateAtLeastOmega;
      r.reason = "infinite interval without a recursive system";
    }
    return r;
  }

  RankResult rank_ss(const Word& w, const Word& v, const Word& u) const {
    auto steps = epi_steps(w, v);
    auto mono = mono_steps(v, u);
    steps.insert(steps.end(), mono.begin(), mono.end());
    return classify_steps(std::move(steps));
  }

  RankResult rank_sb(const Word& band, const Word& v) const { return band_leg(band, v, true); }
  RankResult rank_bs(const Word& band, const Word& v) const { return band_leg(band, v, false); }

  RankResult rank_bb(const Word& from, const Word& to, const std::optional<Word>& v,
                     bool hom_basis) const {
    RankResult r;
    if (hom_basis) {
      if (!same_band(*A_, from, to) && !same_band(*A_, from, invert(to)))
        throw Error(ErrorKind::InvalidDescriptor, "hom-basis maps need equal bands");
      r.cls = RankClass::Finite;
      r.reason = "hom-basis map";
      return r;
    }
    if (!v) throw Error(ErrorKind::InvalidDescriptor, "string-mediated map needs a string");
    auto bs = rank_bs(from, *v);
    auto sb = rank_sb(to, *v);
    if (bs.cls == RankClass::StableRadical || sb.cls == RankClass::StableRadical) {
      r.cls = RankClass::StableRadical;
      r.reason = bs.cls == RankClass::StableRadical ? "BS leg: " + bs.reason : "SB leg: " + sb.reason;
    } else {
      r.cls = RankClass::ExactlyOmegaPlusOne;
      r.reason = "BS and SB legs of rank omega";
    }
    return r;
  }

  RankResult rank(const GraphMapDescriptor& d) const {
    using T = GraphMapDescriptor::Type;
    switch (d.type) {
      case T::SS: return rank_ss(d.w, d.v, d.u);
      case T::SB: return rank_sb(d.band, d.v);
      case T::BS: return rank_bs(d.band, d.v);
      case T::BB:
        return rank_bb(d.band, d.band2, d.hom_basis ? std::nullopt : std::optional<Word>(d.v),
                       d.hom_basis);
    }
    throw Error(ErrorKind::Internal, "unknown descriptor");
  }

  /// Rank-omega SB and BS maps over prime bands, representatives bounded
  /// by 2|b| + the band-free length bound.
  StableRankEstimate stable_rank_estimate() const {
    if (!cls_.meta_torsion_free)
      throw Error(ErrorKind::NotMetaTorsionFree,
                  "stable rank needs a meta-torsion-free algebra: " + cls_.meta_torsion_free_reason);
    StableRankEstimate est;
    for (auto& p : S_.prime_bands()) {
      const Word& b = p.rep;
      const std::size_t cap = 2 * b.size() + band_free_length_bound(*A_);
      Word win = Word::of(detail::repeat(b, cap / b.size() + 3));
      for (auto kind : {SubstringKind::Image, SubstringKind::Factor}) {
        auto ws = kind == SubstringKind::Image ? image_substrings(win, true) : factor_substrings(win, true);
        std::vector<Word> seen;
        for (auto& s : ws) {
          if (s.start < b.size() || s.start >= 2 * b.size() || s.end + b.size() > win.size() ||
              s.end - s.start > cap)
            continue;
          Word v = subword(*A_, win, s.start, s.end);
          if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
          seen.push_back(v);
          bool sb = kind == SubstringKind::Image;
          if (band_leg(b, v, sb).cls != RankClass::ExactlyOmega) continue;
          (sb ? est.sb_omega : est.bs_omega).push_back({b, v});
        }
      }
    }
    for (auto& bs : est.bs_omega)
      for (auto& sb : est.sb_omega)
        if (!est.composable && same_module(bs.v, sb.v)) est.composable = std::make_pair(bs, sb);
    if (est.sb_omega.empty() && est.bs_omega.empty())
      est.value = StableRank::Omega;
    else
      est.value = est.composable ? StableRank::OmegaPlusTwo : StableRank::OmegaPlusOne;
    return est;
  }

  /// rank_ss over every descriptor M(w) -> M(v) -> M(u) with |w|, |u| <= max_len.
  DichotomyAudit audit_dichotomy(std::size_t max_len) const {
    struct Half {
      Word host;
      std::vector<RankStep> steps;
    };
    std::map<Word, std::vector<Half>> monos, epis;
    for (auto& s : enumerate_strings(*A_, max_len, true)) {
      std::vector<Word> hosts{s};
      if (!s.is_lazy() && !(invert(s) == s)) hosts.push_back(invert(s));
      for (auto& h : hosts) {
        for (auto& o : image_substrings(h, true)) {
          Word v = subword(*A_, h, o.start, o.end);
          monos[v].push_back({s, steps_at(h, o.start, o.end, SubstringKind::Image)});
        }
        for (auto& o : factor_substrings(h, true)) {
          Word v = subword(*A_, h, o.start, o.end);
          epis[v].push_back({s, steps_at(h, o.start, o.end, SubstringKind::Factor)});
        }
      }
    }
    DichotomyAudit audit;
    for (auto& [v, ms] : monos) {
      auto it = epis.find(v);
      if (it == epis.end()) continue;
      for (auto& e : it->second)
        for (auto& m : ms) {
          auto steps = e.steps;
          steps.insert(steps.end(), m.steps.begin(), m.steps.end());
          auto r = classify_steps(std::move(steps));
          ++audit.descriptors;
          ++audit.counts[r.cls];
          if (r.cls == RankClass::IndeterminateAtLeastOmega && !audit.first_indeterminate)
            audit.first_indeterminate = GraphMapDescriptor::ss(e.host, v, m.host);
        }
    }
    return audit;
  }

 private:
  static bool same_module(const Word& x, const Word& y) {
    if (x.is_lazy() || y.is_lazy()) return x.is_lazy() && y.is_lazy() && x.vertex == y.vertex;
    return x == y || x == invert(y);
  }

  std::optional<RecursiveSystemWitness> recursive_for(const Word& x, int vertex, int sign) const {
    auto key = std::make_tuple(x, vertex, sign);
    auto it = rec_cache_.find(key);
    if (it != rec_cache_.end()) return it->second;
    std::optional<RecursiveSystemWitness> r;
    try {
      r = find_recursive_system(*A_, S_, x, vertex, sign);
    } catch (const Error&) {
    }
    rec_cache_.emplace(key, r);
    return r;
  }

  std::vector<RankStep> frame_steps(const Word& from, const Word& to, bool bar, bool right) const {
    std::vector<RankStep> out;
    Word a = right ? invert(from) : from, b = right ? invert(to) : to;
    auto fs = left_factors(*A_, a, b, bar);
    Word cur = a;
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
      RankStep s;
      s.op = {right ? (bar ? Op::RBar : Op::R) : it->op, it->index};
      s.from = cur;
      auto ir = interval_is_finite(*A_, cur, it->index, bar, S_.prime_bands(), S_.catalog());
      s.to = ir.endpoint;
      s.finite = ir.finite;
      s.interval = ir.witness;
      out.push_back(s);
      cur = ir.endpoint;
    }
    return out;
  }

  // Steps from host[start, end) out to the whole host.
  std::vector<RankStep> steps_at(const Word& host, std::size_t start, std::size_t end,
                                 SubstringKind kind) const {
    const bool bar = kind == SubstringKind::Factor;
    Word v = subword(*A_, host, start, end);
    Word left = end == 0 ? v : subword(*A_, host, 0, end);
    auto steps = frame_steps(v, left, bar, false);
    auto right = frame_steps(left, host, bar, true);
    steps.insert(steps.end(), right.begin(), right.end());
    return steps;
  }

  std::vector<RankStep> host_steps(const Word& v, const Word& host, SubstringKind kind) const {
    for (const Word& h : {host, invert(host)}) {
      if (auto occ = detail::find_occurrence(*A_, h, v, kind, false))
        return steps_at(h, occ->first, occ->second, kind);
    }
    throw Error(kind == SubstringKind::Image ? ErrorKind::NotAnImageSubstring : ErrorKind::InvalidDescriptor,
                format_word(*A_, v) + " is not " +
                    (kind == SubstringKind::Image ? "an image" : "a factor") + " substring of " +
                    format_word(*A_, host));
  }

  // SB (image, l and r) or BS (factor, lbar and rbar) map for band b and string v.
  RankResult band_leg(const Word& band, const Word& v, bool sb) const {
    if (!is_band(*A_, band.syl)) throw Error(ErrorKind::NotABand, format_word(*A_, band) + " is not a band");
    const auto kind = sb ? SubstringKind::Image : SubstringKind::Factor;
    Word b = band;
    bool found = false;
    for (const Word& cand : {band, invert(band)}) {
      Word win = Word::of(detail::repeat(cand, v.size() / cand.size() + 3));
      if (detail::find_occurrence(*A_, win, v, kind, true)) {
        b = cand;
        found = true;
        break;
      }
    }
    if (!found)
      throw Error(sb ? ErrorKind::NotAnImageSubstring : ErrorKind::InvalidDescriptor,
                  format_word(*A_, v) + " is not " + (sb ? "an image" : "a factor") +
                      " substring of the band");
    RankResult r;
    if (!is_prime_band_word(*A_, b.syl)) {
      r.cls = RankClass::StableRadical;
      r.reason = "composite band";
      return r;
    }
    auto le = one_sided_expansion(*A_, v, sb ? Op::L : Op::LBar);
    auto re = one_sided_expansion(*A_, invert(v), sb ? Op::L : Op::LBar);  // right side, inverted
    auto lp = detail::periodic_left(le);
    auto rp = detail::periodic_left(re);
    bool left_ok = lp && same_band(*A_, *lp, b);
    bool right_ok = rp && same_band(*A_, invert(*rp), b);
    if (left_ok && right_ok) {
      r.cls = RankClass::ExactlyOmega;
      r.left_period = *lp;
      r.right_period = invert(*rp);
      r.reason = "both expansions follow the band";
    } else {
      r.cls = RankClass::StableRadical;
      r.reason = std::string(left_ok ? "right" : "left") + " expansion leaves the band";
    }
    return r;
  }

  const Algebra* A_;
  BridgeSystem S_;
  AlgebraClassification cls_;
  mutable std::map<std::tuple<Word, int, int>, std::optional<RecursiveSystemWitness>> rec_cache_;
};

}  // namespace stralg
