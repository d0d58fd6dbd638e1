// sqa: command-line front end for string algebra presentations.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stralg/oracle.hpp"
#include "stralg/ranks.hpp"

using namespace stralg;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string file;
  bool json = false;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Precondition:
    case ErrorKind::NotMetaTorsionFree:
    case ErrorKind::UndefinedOperator:
      return 2;
    case ErrorKind::Internal:
      return 3;
    default:
      return 1;
  }
}

QuiverPresentation read_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Syntax, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

Algebra load(const std::string& path) {
  auto p = read_presentation(path);
  auto rep = validate_string_algebra(p);
  if (!rep.is_string_algebra)
    throw Error(ErrorKind::NotAString, "not a string algebra: " +
                                             std::string(to_string(rep.violations[0].axiom)) + " at " +
                                             rep.violations[0].locus);
  return Algebra(std::move(p));
}

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string fw(const Algebra& A, const Word& w) { return format_word(A, w); }

Json word_list(const Algebra& A, const std::vector<Word>& ws) {
  Json j = Json::array();
  for (auto& w : ws) j.push_back(fw(A, w));
  return j;
}

Json band_json(const Algebra& A, const Band& b) {
  return Json{{"band", fw(A, b.rep)}, {"length", b.length}, {"prime", b.prime}};
}

std::string vertex_name(const Algebra& A, const ExtendedBridgeQuiver& Q, int v) {
  const auto& x = Q.vertices[static_cast<std::size_t>(v)];
  return x.is_band ? "(" + fw(A, x.word) + ")" : fw(A, x.word);
}

Json expansion_json(const Algebra& A, const ExpansionResult& r) {
  Json j{{"op", to_string(r.op)}, {"start", fw(A, r.start)}, {"defined", r.defined}};
  if (r.defined) {
    j["period"] = fw(A, r.period);
    j["preperiod"] = r.preperiod.syl.empty() ? "" : fw(A, r.preperiod);
    j["limit"] = format_expansion(A, r);
  } else {
    j["undefined_at_step"] = r.undefined_at_step;
  }
  return j;
}

Json recursive_json(const Algebra& A, const RecursiveSystemWitness& w) {
  return Json{{"x", fw(A, w.x)},
              {"tau", format_term(A, w.tau)},
              {"T", format_factors(w.composite())},
              {"tau1", format_factors(w.tau1.factors)},
              {"tau2", format_factors(w.tau2.factors)},
              {"mu", format_factors(w.mu.factors)},
              {"equation", "<" + format_factors(w.mu.factors) + "|" + format_factors(w.composite()) +
                               ">" + fw(A, Word::lazy(w.vertex, w.sign)) + " = " + format_term(A, w.tau)},
              {"b", fw(A, w.b)},
              {"b_prime", fw(A, w.b_prime)},
              {"v", fw(A, w.v)},
              {"b_double", fw(A, w.b_double)},
              {"limit", format_expansion(A, w.limit)},
              {"solution", fw(A, w.solution)},
              {"verified", verify_recursive_system(A, w)}};
}

Json rank_json(const Algebra& A, const RankResult& r) {
  Json j{{"class", to_string(r.cls)}, {"reason", r.reason}};
  Json steps = Json::array();
  for (auto& s : r.trace)
    steps.push_back({{"op", format_graded(s.op)}, {"from", fw(A, s.from)}, {"to", fw(A, s.to)},
                     {"finite", s.finite}});
  j["trace"] = steps;
  if (r.interval)
    j["interval_witness"] = {{"band", fw(A, r.interval->band)}, {"connector", fw(A, r.interval->z)},
                             {"word", fw(A, r.interval->word)}};
  if (r.recursive) j["recursive_system"] = recursive_json(A, *r.recursive);
  if (!r.left_period.syl.empty())
    j["periods"] = {fw(A, r.left_period), fw(A, r.right_period)};
  return j;
}

std::string rank_text(const Algebra& A, const RankResult& r) {
  std::ostringstream out;
  out << to_string(r.cls) << " (" << r.reason << ")\n";
  for (auto& s : r.trace)
    out << "  " << format_graded(s.op) << ": " << fw(A, s.from) << " -> " << fw(A, s.to)
        << (s.finite ? "" : "  [infinite interval]") << "\n";
  if (r.recursive)
    out << "  recursive system: <" << format_factors(r.recursive->mu.factors) << "|"
        << format_factors(r.recursive->composite()) << ">"
        << fw(A, Word::lazy(r.recursive->vertex, r.recursive->sign)) << " = "
        << format_term(A, r.recursive->tau) << "\n";
  return out.str();
}

// ---- subcommands -------------------------------------------------------------------

int cmd_validate(const Options& o) {
  auto p = read_presentation(o.file);
  auto rep = validate_string_algebra(p);
  Json viol = Json::array();
  std::ostringstream text;
  for (auto& v : rep.violations) {
    viol.push_back({{"axiom", to_string(v.axiom)}, {"locus", v.locus}});
    text << "violation " << to_string(v.axiom) << " at " << v.locus << "\n";
  }
  Json j{{"name", p.name}, {"string_algebra", rep.is_string_algebra}, {"violations", viol}};
  if (rep.is_string_algebra) {
    Algebra A(p);
    Json sig = Json::object(), eps = Json::object();
    for (int a = 0; a < A.num_arrows(); ++a) {
      sig[A.arrow_id(a)] = A.signs().sigma[static_cast<std::size_t>(a)];
      eps[A.arrow_id(a)] = A.signs().epsilon[static_cast<std::size_t>(a)];
    }
    j["sigma"] = sig;
    j["epsilon"] = eps;
    text << "ok: " << p.name << " is a string algebra (" << p.num_vertices() << " vertices, "
         << p.num_arrows() << " arrows)\n";
  }
  emit(o, j, text.str());
  return rep.is_string_algebra ? 0 : 1;
}

int cmd_strings(const Options& o, std::size_t max_len, bool collapse) {
  auto A = load(o.file);
  auto ws = enumerate_strings(A, max_len, collapse);
  std::string text;
  for (auto& w : ws) text += fw(A, w) + "\n";
  emit(o, Json{{"max_len", max_len}, {"count", ws.size()}, {"strings", word_list(A, ws)}}, text);
  return 0;
}

int cmd_bands(const Options& o, std::size_t max_len) {
  auto A = load(o.file);
  BridgeSystem S(A);
  if (max_len == 0) {
    for (auto& b : S.prime_bands()) max_len = std::max(max_len, 2 * b.length);
  }
  auto bs = enumerate_bands(A, max_len);
  auto cls = classify_bridge_quiver(S);
  Json list = Json::array();
  std::ostringstream text;
  for (auto& b : bs) {
    list.push_back(band_json(A, b));
    text << fw(A, b.rep) << (b.prime ? "" : "  (composite)") << "\n";
  }
  text << bs.size() << " bands of length <= " << max_len << "; domestic=" << (cls.domestic ? "true" : "false")
       << "\n";
  emit(o, Json{{"max_len", max_len}, {"count", bs.size()}, {"domestic", cls.domestic}, {"bands", list}},
       text.str());
  return 0;
}

int cmd_prime_bands(const Options& o, const std::string& check) {
  auto A = load(o.file);
  if (!check.empty()) {
    Word w = parse_word_raw(A, check);
    bool band = is_band(A, w.syl);
    bool prime = band && is_prime_band_word(A, w.syl);
    emit(o, Json{{"word", fw(A, w)}, {"band", band}, {"prime", prime}},
         fw(A, w) + ": " + (!band ? "not a band" : prime ? "prime band" : "composite band") + "\n");
    return 0;
  }
  auto ps = enumerate_prime_bands(A);
  Json list = Json::array();
  std::string text;
  for (auto& b : ps) {
    list.push_back(band_json(A, b));
    text += fw(A, b.rep) + "\n";
  }
  emit(o, Json{{"bound", prime_band_length_bound(A)}, {"count", ps.size()}, {"prime_bands", list}}, text);
  return 0;
}

int cmd_band_free(const Options& o) {
  auto A = load(o.file);
  auto cat = enumerate_band_free_strings(A);
  std::string text;
  for (auto& w : cat.strings) text += fw(A, w) + "\n";
  emit(o,
       Json{{"length_bound", cat.length_bound}, {"longest", cat.longest}, {"count", cat.strings.size()},
            {"strings", word_list(A, cat.strings)}},
       text);
  return 0;
}

int cmd_bridge_quiver(const Options& o, bool extended, bool weak, bool dot) {
  auto A = load(o.file);
  BridgeSystem S(A);
  auto Q = S.build(weak);
  auto shown = [&](int v) { return extended || static_cast<std::size_t>(v) < Q.num_bands; };
  std::vector<BridgeArrow> arrows;
  for (auto& a : Q.arrows)
    if (shown(a.source) && shown(a.target)) arrows.push_back(a);
  if (dot) {
    std::cout << "digraph \"" << A.presentation().name << "\" {\n";
    for (std::size_t v = 0; v < Q.vertices.size(); ++v)
      if (shown(static_cast<int>(v)))
        std::cout << "  n" << v << " [label=\"" << vertex_name(A, Q, static_cast<int>(v)) << "\""
                  << (Q.vertices[v].is_band ? "" : ", shape=box") << "];\n";
    for (auto& a : arrows)
      std::cout << "  n" << a.source << " -> n" << a.target << " [label=\"" << fw(A, a.label) << "\""
                << (a.weak_only ? ", style=dashed" : "") << "];\n";
    std::cout << "}\n";
    return 0;
  }
  Json verts = Json::array(), arr = Json::array();
  std::ostringstream text;
  for (std::size_t v = 0; v < Q.vertices.size(); ++v)
    if (shown(static_cast<int>(v)))
      verts.push_back({{"id", v}, {"kind", Q.vertices[v].is_band ? "band" : "lazy"},
                       {"word", fw(A, Q.vertices[v].word)}});
  for (auto& a : arrows) {
    arr.push_back({{"source", a.source}, {"target", a.target}, {"label", fw(A, a.label)},
                   {"kind", to_string(a.kind)}, {"weak_only", a.weak_only}});
    text << vertex_name(A, Q, a.source) << " -[" << fw(A, a.label) << "]-> " << vertex_name(A, Q, a.target)
         << "  " << to_string(a.kind) << (a.weak_only ? " weak" : "") << "\n";
  }
  emit(o, Json{{"vertices", verts}, {"arrows", arr}}, text.str());
  return 0;
}

int cmd_classify(const Options& o) {
  auto A = load(o.file);
  BridgeSystem S(A);
  auto c = classify_bridge_quiver(S);
  auto tf = is_torsion_free(A);
  c.torsion_free = tf.torsion_free;
  Json meta = Json::array();
  for (int k : c.meta_band) meta.push_back(fw(A, S.band(static_cast<std::size_t>(k))));
  Json j{{"domestic", c.domestic},
         {"torsion_free", c.torsion_free},
         {"meta_union_cyclic", c.meta_union_cyclic},
         {"meta_torsion_free", c.meta_torsion_free},
         {"meta_band", meta},
         {"reasons",
          {{"domestic", c.domestic_reason},
           {"meta_union_cyclic", c.meta_union_cyclic_reason},
           {"meta_torsion_free", c.meta_torsion_free_reason}}}};
  std::ostringstream text;
  auto yn = [](bool b) { return b ? "true" : "false"; };
  text << "domestic=" << yn(c.domestic) << " torsion_free=" << yn(c.torsion_free)
       << " meta_union_cyclic=" << yn(c.meta_union_cyclic) << " meta_torsion_free=" << yn(c.meta_torsion_free)
       << "\n";
  if (!c.domestic_reason.empty()) text << "  domestic: " << c.domestic_reason << "\n";
  if (!c.meta_torsion_free_reason.empty()) text << "  meta_torsion_free: " << c.meta_torsion_free_reason << "\n";
  if (!tf.torsion_free) {
    auto& w = tf.witnesses.front();
    j["torsion_witness"] = {{"word", fw(A, w.word)}, {"op", to_string(w.op)}};
    text << "  torsion: " << to_string(w.op) << "(" << fw(A, w.word) << ") defined, "
         << to_string(w.op) << "^2 undefined\n";
  }
  emit(o, j, text.str());
  return 0;
}

int cmd_hammock(const Options& o, const std::string& dir, const std::string& word, const std::string& side) {
  auto A = load(o.file);
  Word u = parse_word(A, word);
  HammockRef h = side == "right" ? right_hammock_of(A, u) : left_hammock_of(A, u);
  auto r = dir == "succ" ? successor(A, u, h) : predecessor(A, u, h);
  Json j{{"word", fw(A, u)}, {"side", side}, {"direction", dir}, {"defined", r.has_value()}};
  if (r) j["result"] = fw(A, *r);
  emit(o, j, (r ? fw(A, *r) : std::string("undefined")) + "\n");
  return 0;
}

int cmd_expand(const Options& o, const std::string& word, const std::string& op_name, int index, int times) {
  auto A = load(o.file);
  Word u = parse_word(A, word);
  Op op = parse_op(op_name);
  Json j{{"word", fw(A, u)}, {"op", to_string(op)}};
  std::ostringstream text;
  std::optional<Word> cur = u;
  Json iter = Json::array();
  for (int k = 1; k <= times && cur; ++k) {
    cur = index >= 0 ? apply_graded(A, {op, static_cast<std::size_t>(index)}, *cur) : apply(A, op, *cur);
    iter.push_back(cur ? Json(fw(A, *cur)) : Json(nullptr));
    text << to_string(op) << (index >= 0 ? "_" + std::to_string(index) : "") << "^" << k << ": "
         << (cur ? fw(A, *cur) : "undefined") << "\n";
  }
  j["iterates"] = iter;
  if (index < 0) {
    auto e = one_sided_expansion(A, u, op);
    j["expansion"] = expansion_json(A, e);
    text << "<1>" << to_string(op) << ": " << format_expansion(A, e) << "\n";
  }
  emit(o, j, text.str());
  return 0;
}

int cmd_generate(const Options& o, const std::string& word, std::size_t count_max) {
  auto A = load(o.file);
  Word u = parse_word(A, word);
  BridgeSystem S(A);
  auto Q = S.build(false);
  auto p = find_generating_path(A, S, Q, u);
  Word back = generate_string(A, Q, p);
  Json arrows = Json::array();
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    Json a{{"source", vertex_name(A, Q, p.arrows[k].source)},
           {"target", vertex_name(A, Q, p.arrows[k].target)},
           {"label", fw(A, p.arrows[k].label)},
           {"kind", to_string(p.arrows[k].kind)}};
    if (k < p.exponents.size()) a["exponent"] = p.exponents[k];
    arrows.push_back(a);
  }
  Json j{{"word", fw(A, u)}, {"path", format_path(A, Q, p)}, {"arrows", arrows}, {"generated", fw(A, back)},
         {"round_trip", back == u}};
  std::string text = format_path(A, Q, p) + "\ngenerates " + fw(A, back) + "\n";
  if (count_max > 0) {
    auto n = count_generating_paths(A, S, Q, u, count_max);
    j["paths_up_to"] = count_max;
    j["path_count"] = n;
    text += std::to_string(n) + " generating paths with at most " + std::to_string(count_max) + " arrows\n";
  }
  emit(o, j, text);
  return back == u ? 0 : 3;
}

int cmd_rank(const Options& o, const std::string& kind, const std::vector<std::string>& words, bool hom_basis) {
  auto A = load(o.file);
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (words.size() < lo || words.size() > hi)
      throw Error(ErrorKind::InvalidDescriptor, "rank " + kind + " takes " + std::to_string(lo) +
                                                    (lo == hi ? "" : "-" + std::to_string(hi)) + " words");
  };
  RankAnalyzer R(A);
  auto w = [&](std::size_t k) { return parse_word(A, words[k]); };
  auto band = [&](std::size_t k) { return parse_word_raw(A, words[k]); };
  if (kind == "recursive") {
    need(1, 1);
    Word x = w(0);
    auto [v, s] = term_base(A, x);
    auto r = find_recursive_system(A, R.bridges(), x, v, s);
    Json j{{"x", fw(A, x)}, {"found", r.has_value()}};
    std::string text = "absent\n";
    if (r) {
      j["witness"] = recursive_json(A, *r);
      text = j["witness"]["equation"].get<std::string>() + "\n  b = " + fw(A, r->b) + "; b' = " + fw(A, r->b_prime) +
             "; v = " + fw(A, r->v) + "\n  limit " + format_expansion(A, r->limit) + "\n";
    }
    emit(o, j, text);
    return 0;
  }
  RankResult r;
  if (kind == "ss") {
    need(3, 3);
    r = R.rank_ss(w(0), w(1), w(2));
  } else if (kind == "sb") {
    need(2, 2);
    r = R.rank_sb(band(0), w(1));
  } else if (kind == "bs") {
    need(2, 2);
    r = R.rank_bs(band(0), w(1));
  } else if (kind == "bb") {
    need(2, 3);
    r = R.rank_bb(band(0), band(1), words.size() == 3 ? std::optional<Word>(w(2)) : std::nullopt, hom_basis);
  } else {
    throw Error(ErrorKind::Syntax, "unknown rank kind '" + kind + "'");
  }
  Json j = rank_json(A, r);
  j["kind"] = kind;
  emit(o, j, rank_text(A, r));
  return 0;
}

int cmd_stable_rank(const Options& o) {
  auto A = load(o.file);
  RankAnalyzer R(A);
  auto e = R.stable_rank_estimate();
  auto list = [&](const std::vector<BandMapWitness>& ws) {
    Json j = Json::array();
    for (auto& x : ws) j.push_back({{"band", fw(A, x.band)}, {"string", fw(A, x.v)}});
    return j;
  };
  Json j{{"value", to_string(e.value)},
         {"prime_bands", R.bridges().prime_bands().size()},
         {"sb_omega", list(e.sb_omega)},
         {"bs_omega", list(e.bs_omega)}};
  std::ostringstream text;
  text << "stable rank " << to_string(e.value) << "\n";
  text << "  rank-omega SB maps: " << e.sb_omega.size() << ", BS maps: " << e.bs_omega.size() << "\n";
  if (e.composable) {
    j["composable"] = {{"bs_band", fw(A, e.composable->first.band)},
                       {"sb_band", fw(A, e.composable->second.band)},
                       {"through", fw(A, e.composable->first.v)}};
    text << "  B(" << fw(A, e.composable->first.band) << ") -> M(" << fw(A, e.composable->first.v) << ") -> B("
         << fw(A, e.composable->second.band) << ")\n";
  }
  emit(o, j, text.str());
  return 0;
}

int cmd_oracle(const Options& o, const OracleBudget& budget) {
  auto A = load(o.file);
  auto reports = run_all_checks(A, budget);
  Json arr = Json::array();
  std::ostringstream text;
  bool ok = true;
  for (auto& r : reports) {
    Json mm = Json::array();
    for (auto& m : r.mismatches) mm.push_back({{"input", m.input}, {"fast", m.fast}, {"oracle", m.oracle}});
    arr.push_back({{"check", r.check}, {"population", r.population}, {"passed", r.passed()},
                   {"mismatches", mm}});
    ok = ok && r.passed();
    text << (r.passed() ? "PASS " : "FAIL ") << r.check << "  population=" << r.population
         << "  mismatches=" << r.mismatches.size() << "\n";
    for (auto& m : r.mismatches) text << "    " << m.input << ": fast " << m.fast << ", oracle " << m.oracle << "\n";
  }
  emit(o, Json{{"passed", ok}, {"checks", arr}}, text.str());
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"string algebra toolkit"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "JSON output");
  auto file_opt = [&](CLI::App* c) {
    c->add_option("presentation", o.file, "presentation file")->required();
    c->fallthrough();
  };

  auto* validate = app.add_subcommand("validate", "check the string algebra axioms");
  file_opt(validate);

  std::size_t max_len = 4;
  bool collapse = false;
  auto* strings = app.add_subcommand("strings", "enumerate strings");
  file_opt(strings);
  strings->add_option("--max-len", max_len);
  strings->add_flag("--collapse-inverses", collapse);

  std::size_t band_len = 0;
  auto* bands = app.add_subcommand("bands", "bands up to rotation");
  file_opt(bands);
  bands->add_option("--max-len", band_len, "default: twice the longest prime band");

  std::string check;
  auto* primes = app.add_subcommand("prime-bands", "prime bands up to rotation");
  file_opt(primes);
  primes->add_option("--check", check, "classify one word");

  auto* band_free = app.add_subcommand("band-free", "band-free strings");
  file_opt(band_free);

  bool extended = false, weak = false, dot = false;
  auto* quiver = app.add_subcommand("bridge-quiver", "bridge quiver");
  file_opt(quiver);
  quiver->add_flag("--extended", extended, "include lazy paths");
  quiver->add_flag("--weak", weak, "include weak-only arrows");
  quiver->add_flag("--dot", dot, "Graphviz output");

  auto* classify = app.add_subcommand("classify", "domestic, torsion-free and meta flags");
  file_opt(classify);

  std::string dir, word, side = "left";
  auto* hammock = app.add_subcommand("hammock", "direct successor or predecessor");
  file_opt(hammock);
  hammock->add_option("direction", dir)->required()->check(CLI::IsMember({"succ", "pred"}));
  hammock->add_option("word", word)->required();
  hammock->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));

  std::string op_name = "l";
  int index = -1, times = 1;
  auto* expand = app.add_subcommand("expand", "apply an operator and its one-sided expansion");
  file_opt(expand);
  expand->add_option("word", word)->required();
  expand->add_option("--op", op_name)->check(CLI::IsMember({"l", "lbar", "r", "rbar"}));
  expand->add_option("--index", index, "graded operator index");
  expand->add_option("--times", times, "number of applications");

  std::size_t count_max = 0;
  auto* generate = app.add_subcommand("generate-path", "generating path of a string");
  file_opt(generate);
  generate->add_option("word", word)->required();
  generate->add_option("--count-max", count_max, "count paths with at most this many arrows");

  std::string kind;
  std::vector<std::string> words;
  bool hom_basis = false;
  auto* rank = app.add_subcommand("rank", "rank class of a graph map");
  file_opt(rank);
  rank->add_option("kind", kind)->required()->check(CLI::IsMember({"ss", "sb", "bs", "bb", "recursive"}));
  rank->add_option("words", words);
  rank->add_flag("--hom-basis", hom_basis);

  auto* stable = app.add_subcommand("stable-rank", "stable rank of the module category");
  file_opt(stable);

  OracleBudget budget;
  std::string action;
  auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
  file_opt(oracle);
  oracle->add_option("action", action)->required()->check(CLI::IsMember({"check"}));
  oracle->add_option("--budget", budget.seconds, "seconds");
  oracle->add_option("--search-len", budget.search_len);
  oracle->add_option("--hammock-len", budget.hammock_len);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*strings) return cmd_strings(o, max_len, collapse);
    if (*bands) return cmd_bands(o, band_len);
    if (*primes) return cmd_prime_bands(o, check);
    if (*band_free) return cmd_band_free(o);
    if (*quiver) return cmd_bridge_quiver(o, extended, weak, dot);
    if (*classify) return cmd_classify(o);
    if (*hammock) return cmd_hammock(o, dir, word, side);
    if (*expand) return cmd_expand(o, word, op_name, index, times);
    if (*generate) return cmd_generate(o, word, count_max);
    if (*rank) return cmd_rank(o, kind, words, hom_basis);
    if (*stable) return cmd_stable_rank(o);
    if (*oracle) return cmd_oracle(o, budget);
  } catch (const Error& e) {
    if (o.json)
      std::cout << Json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump(2) << "\n";
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
