#pragma once

// Brute-force cross-checks. Only the words module's validity checks are
// shared with the fast paths.

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stralg/generation.hpp"

namespace stralg {

struct OracleMismatch {
  std::string input, fast, oracle;
};

struct OracleReport {
  std::string check;
  std::size_t population = 0;
  std::vector<OracleMismatch> mismatches;
  double seconds = 0;

  bool passed() const { return mismatches.empty(); }
};

struct OracleBudget {
  std::size_t hammock_len = 8;      // members whose neighbours are checked
  std::size_t search_len = 12;      // brute-force scan length
  std::size_t band_len = 16;        // brute-force band search cap
  std::size_t extend_len = 8;       // strings checked for extendability
  std::size_t extend_band_len = 14; // bands searched for them
  std::size_t expansion_len = 6;    // starts of expansions checked for prime periods
  double seconds = 60;
};

namespace oracle_detail {

using Cyc = std::vector<Syllable>;

inline std::vector<Word> all_strings(const Algebra& A, std::size_t max_len) {
  std::vector<Word> out;
  for (int v = 0; v < A.num_vertices(); ++v)
    for (int i : {1, -1}) out.push_back(Word::lazy(v, i));
  std::vector<Cyc> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Cyc> next;
    for (auto& w : layer)
      for (int a = 0; a < A.num_arrows(); ++a)
        for (bool d : {true, false}) {
          Cyc x{{a, d}};
          x.insert(x.end(), w.begin(), w.end());
          if (is_string(A, x)) next.push_back(std::move(x));
        }
    for (auto& w : next) out.push_back(Word::of(w));
    layer = std::move(next);
  }
  return out;
}

// u < w in a left hammock: w = w'Bc and u = c or u = u'ac, or u = u'aw.
inline bool literal_less(const Word& u, const Word& w) {
  std::size_t k = 0;
  while (k < u.size() && k < w.size() && u.syl[u.size() - 1 - k] == w.syl[w.size() - 1 - k]) ++k;
  bool u_more = k < u.size(), w_more = k < w.size();
  bool w_inv = w_more && !w.syl[w.size() - 1 - k].direct;
  bool u_dir = u_more && u.syl[u.size() - 1 - k].direct;
  return (w_inv && (!u_more || u_dir)) || (u_dir && !w_more);
}

inline bool member(const Algebra& A, const Word& u, const HammockRef& h) {
  if (h.side == Side::Left) return source(A, u) == h.vertex && sigma(A, u) == -h.sign;
  return target(A, u) == h.vertex && epsilon(A, u) == h.sign;
}

inline bool hammock_less(const Word& u, const Word& w, Side side) {
  return side == Side::Left ? literal_less(u, w) : literal_less(invert(u), invert(w));
}

inline std::optional<Word> neighbour(const Word& u, const std::vector<Word>& members, Side side,
                                     bool up) {
  std::optional<Word> best;
  for (auto& x : members) {
    bool beyond = up ? hammock_less(u, x, side) : hammock_less(x, u, side);
    if (!beyond) continue;
    if (!best || (up ? hammock_less(x, *best, side) : hammock_less(*best, x, side))) best = x;
  }
  return best;
}

inline bool primitive(const Cyc& s) {
  for (std::size_t d = 1; d < s.size(); ++d) {
    if (s.size() % d) continue;
    bool same = true;
    for (std::size_t i = 0; i < s.size() && same; ++i) same = s[i] == s[(i + d) % s.size()];
    if (same) return false;
  }
  return true;
}

inline bool band(const Algebra& A, const Cyc& s) {
  if (s.size() < 2) return false;
  bool dir = false, inv = false;
  for (auto x : s) (x.direct ? dir : inv) = true;
  if (!dir || !inv || !primitive(s)) return false;
  Cyc sq = s;
  sq.insert(sq.end(), s.begin(), s.end());
  return is_string(A, sq);
}

inline Cyc rotation(const Cyc& s, std::size_t k) {
  Cyc r;
  for (std::size_t i = 0; i < s.size(); ++i) r.push_back(s[(i + k) % s.size()]);
  return r;
}

inline Cyc least_rotation(const Cyc& s) {
  Cyc best = s;
  for (std::size_t k = 1; k < s.size(); ++k) best = std::min(best, rotation(s, k));
  return best;
}

// s[from, end) splits into `need` or more consecutive bands
inline bool splits(const Algebra& A, const Cyc& s, std::size_t from, int need) {
  if (from == s.size()) return need <= 0;
  for (std::size_t e = from + 2; e <= s.size(); ++e)
    if (band(A, Cyc(s.begin() + static_cast<long>(from), s.begin() + static_cast<long>(e))) &&
        splits(A, s, e, need - 1))
      return true;
  return false;
}

inline bool prime(const Algebra& A, const Cyc& s) {
  for (std::size_t k = 0; k < s.size(); ++k)
    if (splits(A, rotation(s, k), 0, 2)) return false;
  return true;
}

inline std::string show(const Algebra& A, const Cyc& s) { return format_word(A, Word::of(s)); }

inline std::string show(const Algebra& A, const std::optional<Word>& w) {
  return w ? format_word(A, *w) : "undefined";
}

}  // namespace oracle_detail

/// Order-minimal strict upper bound of u among the hammock's strings of
/// length <= search_len.
inline std::optional<Word> oracle_successor(const Algebra& A, const Word& u, const HammockRef& h,
                                            std::size_t search_len) {
  std::vector<Word> members;
  for (auto& x : oracle_detail::all_strings(A, search_len))
    if (oracle_detail::member(A, x, h)) members.push_back(x);
  return oracle_detail::neighbour(u, members, h.side, true);
}

inline std::optional<Word> oracle_predecessor(const Algebra& A, const Word& u, const HammockRef& h,
                                              std::size_t search_len) {
  std::vector<Word> members;
  for (auto& x : oracle_detail::all_strings(A, search_len))
    if (oracle_detail::member(A, x, h)) members.push_back(x);
  return oracle_detail::neighbour(u, members, h.side, false);
}

/// Bands of length <= max_len, each as its lexicographically least rotation.
inline std::set<std::vector<Syllable>> oracle_bands(const Algebra& A, std::size_t max_len) {
  std::set<std::vector<Syllable>> out;
  for (auto& w : oracle_detail::all_strings(A, max_len))
    if (oracle_detail::band(A, w.syl)) out.insert(oracle_detail::least_rotation(w.syl));
  return out;
}

inline std::set<std::vector<Syllable>> oracle_prime_bands(const Algebra& A, std::size_t max_len) {
  std::set<std::vector<Syllable>> out;
  for (auto& b : oracle_bands(A, max_len))
    if (oracle_detail::prime(A, b)) out.insert(b);
  return out;
}

// ---- checks ---------------------------------------------------------------------

inline OracleReport check_neighbours(const Algebra& A, const OracleBudget& budget) {
  OracleReport rep{"hammock-neighbours", 0, {}, 0};
  std::map<std::tuple<int, int, int>, std::vector<Word>> groups;
  auto key = [](const HammockRef& h) { return std::make_tuple(int(h.side), h.vertex, h.sign); };
  auto pool = oracle_detail::all_strings(A, budget.search_len);
  for (auto& x : pool) {
    groups[key(left_hammock_of(A, x))].push_back(x);
    groups[key(right_hammock_of(A, x))].push_back(x);
  }
  for (auto& u : pool) {
    if (u.size() > budget.hammock_len) continue;
    for (const HammockRef& h : {left_hammock_of(A, u), right_hammock_of(A, u)})
      for (bool up : {true, false}) {
        auto fast = up ? successor(A, u, h) : predecessor(A, u, h);
        if (fast && fast->size() > budget.search_len) continue;
        ++rep.population;
        auto slow = oracle_detail::neighbour(u, groups[key(h)], h.side, up);
        if (fast != slow)
          rep.mismatches.push_back({std::string(up ? "succ " : "pred ") +
                                        (h.side == Side::Left ? "left " : "right ") + format_word(A, u),
                                    oracle_detail::show(A, fast), oracle_detail::show(A, slow)});
      }
  }
  return rep;
}

/// Fast prime bands found with `bound` against brute force up to `cap`.
inline OracleReport check_prime_band_completeness(const Algebra& A, std::size_t bound,
                                                  std::size_t cap) {
  OracleReport rep{"prime-band-completeness", 0, {}, 0};
  std::set<std::vector<Syllable>> fast;
  for (auto& b : enumerate_prime_bands(A, bound))
    if (b.length <= cap) fast.insert(oracle_detail::least_rotation(b.rep.syl));
  auto slow = oracle_prime_bands(A, cap);
  std::set<std::vector<Syllable>> all = fast;
  all.insert(slow.begin(), slow.end());
  rep.population = all.size();
  for (auto& b : all) {
    bool f = fast.count(b), s = slow.count(b);
    if (f != s)
      rep.mismatches.push_back({oracle_detail::show(A, b), f ? "prime" : "absent", s ? "prime" : "absent"});
  }
  return rep;
}

inline OracleReport check_bound_stable(const Algebra& A) {
  OracleReport rep{"prime-band-bound-stable", 0, {}, 0};
  std::size_t bound = prime_band_length_bound(A);
  auto at = enumerate_prime_bands(A, bound), beyond = enumerate_prime_bands(A, bound + 1);
  rep.population = beyond.size();
  for (auto& b : beyond)
    if (std::find(at.begin(), at.end(), b) == at.end())
      rep.mismatches.push_back({format_word(A, b.rep), "absent at bound", "prime at bound+1"});
  return rep;
}

inline std::size_t longest_prime_band(const Algebra& A) {
  std::size_t m = 0;
  for (auto& b : enumerate_prime_bands(A)) m = std::max(m, b.length);
  return m;
}

/// Completeness with the bound cut to one below the longest prime band;
/// passes when the corrupted run is caught.
inline OracleReport check_bound_mutation(const Algebra& A, std::size_t cap) {
  OracleReport rep{"prime-band-mutation", 1, {}, 0};
  std::size_t m = longest_prime_band(A);
  if (m < 2 || m > cap) return rep;
  auto bad = check_prime_band_completeness(A, m - 1, cap);
  if (bad.passed())
    rep.mismatches.push_back({"bound " + std::to_string(m - 1), "complete", "expected a missing band"});
  return rep;
}

/// Each direct syllable followed by an inverse one occurs at most once,
/// cyclically, in a prime band.
inline OracleReport check_at_most_once(const Algebra& A, std::size_t cap) {
  OracleReport rep{"prime-band-at-most-once", 0, {}, 0};
  auto slow = oracle_prime_bands(A, cap);
  std::set<std::vector<Syllable>> bands(slow.begin(), slow.end());
  for (auto& b : enumerate_prime_bands(A)) bands.insert(oracle_detail::least_rotation(b.rep.syl));
  for (auto& b : bands) {
    ++rep.population;
    std::map<std::pair<Syllable, Syllable>, int> seen;
    for (std::size_t i = 0; i < b.size(); ++i) {
      Syllable x = b[i], y = b[(i + 1) % b.size()];
      if (x.direct && !y.direct && ++seen[{x, y}] > 1)
        rep.mismatches.push_back({oracle_detail::show(A, b), "prime",
                                  "repeats " + format_word(A, Word::of({x, y}))});
    }
  }
  return rep;
}

inline bool oracle_extendable(const Algebra& A, const Word& u,
                              const std::set<std::vector<Syllable>>& bands) {
  for (auto& b : bands)
    for (std::size_t k = 0; k < b.size(); ++k) {
      Word r = Word::of(oracle_detail::rotation(b, k));
      if (u.is_lazy()) {
        if (source(A, r) == u.vertex && sigma(A, r) == -u.sign) return true;
      } else if (u.size() <= r.size() &&
                 std::equal(u.syl.begin(), u.syl.end(), r.syl.end() - static_cast<long>(u.size()))) {
        return true;
      }
    }
  return false;
}

inline OracleReport check_extendable(const Algebra& A, const OracleBudget& budget) {
  OracleReport rep{"extendable", 0, {}, 0};
  BridgeSystem S(A);
  auto bands = oracle_bands(A, budget.extend_band_len);
  for (auto& u : oracle_detail::all_strings(A, budget.extend_len)) {
    ++rep.population;
    bool fast = is_extendable(A, S, u).extendable;
    bool slow = oracle_extendable(A, u, bands);
    if (fast != slow)
      rep.mismatches.push_back({format_word(A, u), fast ? "extendable" : "not extendable",
                                slow ? "extendable" : "not extendable"});
  }
  return rep;
}

inline OracleReport check_period_primality(const Algebra& A, const OracleBudget& budget) {
  OracleReport rep{"period-primality", 0, {}, 0};
  for (auto& u : oracle_detail::all_strings(A, budget.expansion_len))
    for (Op op : {Op::L, Op::LBar, Op::R, Op::RBar}) {
      auto r = one_sided_expansion(A, u, op);
      if (!r.defined) continue;
      ++rep.population;
      const auto& p = r.period.syl;
      if (!oracle_detail::band(A, p) || !oracle_detail::prime(A, p))
        rep.mismatches.push_back({std::string(to_string(op)) + " " + format_word(A, u),
                                  format_word(A, r.period), "not a prime band"});
    }
  return rep;
}

/// Every cross-check, in a fixed order, timed against the budget.
inline std::vector<OracleReport> run_all_checks(const Algebra& A, const OracleBudget& budget = {}) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const std::size_t cap = std::min(prime_band_length_bound(A) + 1, budget.band_len);
  std::vector<OracleReport> out;
  auto run = [&](auto f) {
    auto t = clock::now();
    OracleReport r = f();
    r.seconds = std::chrono::duration<double>(clock::now() - t).count();
    out.push_back(std::move(r));
  };
  run([&] { return check_neighbours(A, budget); });
  run([&] { return check_bound_stable(A); });
  run([&] { return check_prime_band_completeness(A, prime_band_length_bound(A), cap); });
  run([&] { return check_bound_mutation(A, cap); });
  run([&] { return check_at_most_once(A, cap); });
  run([&] { return check_extendable(A, budget); });
  run([&] { return check_period_primality(A, budget); });
  OracleReport total{"budget", 1, {}, std::chrono::duration<double>(clock::now() - t0).count()};
  if (total.seconds > budget.seconds)
    total.mismatches.push_back({"total", std::to_string(total.seconds) + "s",
                                "<= " + std::to_string(budget.seconds) + "s"});
  out.push_back(total);
  return out;
}

}  // namespace stralg
