#pragma once

// Quiver-with-monomial-relations presentations: the `.sqa` text format,
// string-algebra axiom checks and the sign functions sigma/epsilon.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stralg/core.hpp"

namespace stralg {

struct Arrow {
  std::string id;
  int source = 0;
  int target = 0;
};

struct SignAssignment {
  std::vector<int> sigma;    // indexed by arrow, values +1/-1
  std::vector<int> epsilon;

  bool operator==(const SignAssignment&) const = default;
};

/// A finite quiver with monomial relations. Relations are arrow-index
/// sequences in written (right-to-left composition) order: {c, b} is "c b",
/// the path b followed by c.
struct QuiverPresentation {
  std::string name;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> relations;
  std::optional<SignAssignment> signs;

  int vertex_index(std::string_view id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == id) return static_cast<int>(i);
    return -1;
  }
  int arrow_index(std::string_view id) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].id == id) return static_cast<int>(i);
    return -1;
  }
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }

  bool is_relation(const std::vector<int>& path) const {
    return std::find(relations.begin(), relations.end(), path) !=
           relations.end();
  }
};

enum class Axiom {
  Monomial,
  Finiteness,
  OutDegree,
  InDegree,
  UniqueSuccessor,
  UniquePredecessor,
  SignConsistency,
};

inline std::string_view to_string(Axiom a) {
  switch (a) {
    case Axiom::Monomial: return "monomial";
    case Axiom::Finiteness: return "finiteness";
    case Axiom::OutDegree: return "out-degree";
    case Axiom::InDegree: return "in-degree";
    case Axiom::UniqueSuccessor: return "unique-successor";
    case Axiom::UniquePredecessor: return "unique-predecessor";
    case Axiom::SignConsistency: return "sign-consistency";
  }
  return "?";
}

struct Violation {
  Axiom axiom;
  std::string locus;
};

struct ValidationReport {
  bool is_string_algebra = true;
  std::vector<Violation> violations;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'))
      return false;
  return true;
}

[[noreturn]] inline void syntax_error(int line, int col, const std::string& msg) {
  throw Error(ErrorKind::Syntax, "line " + std::to_string(line) + ", column " +
                                     std::to_string(col) + ": " + msg);
}

}  // namespace detail

/// Parses the `.sqa` presentation format.
inline QuiverPresentation parse_presentation(std::string_view text) {
  using detail::syntax_error;
  QuiverPresentation p;
  bool have_vertices = false;
  std::vector<std::pair<int, std::string>> pending_relations;
  std::vector<std::pair<int, std::string>> pending_sigma, pending_epsilon;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = detail::trim(raw);
    if (line.empty()) continue;
    int col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;

    auto after_colon = [&](std::string_view key) {
      auto pos = line.find(':');
      if (pos == std::string::npos)
        syntax_error(lineno, col + static_cast<int>(key.size()),
                     "expected ':' after '" + std::string(key) + "'");
      return line.substr(pos + 1);
    };
    auto key_is = [&](std::string_view key) {
      if (line.rfind(key, 0) != 0) return false;
      std::size_t k = key.size();
      return k == line.size() || line[k] == ':' ||
             std::isspace(static_cast<unsigned char>(line[k]));
    };

    if (key_is("algebra")) {
      auto toks = detail::split_ws(line.substr(7));
      if (toks.size() != 1 || !detail::is_identifier(toks[0]))
        syntax_error(lineno, col + 8, "expected 'algebra <name>'");
      p.name = toks[0];
    } else if (key_is("vertices")) {
      for (auto& v : detail::split_ws(after_colon("vertices"))) {
        if (!detail::is_identifier(v))
          syntax_error(lineno, col, "bad vertex id '" + v + "'");
        if (p.vertex_index(v) >= 0)
          syntax_error(lineno, col, "duplicate vertex '" + v + "'");
        p.vertices.push_back(v);
      }
      have_vertices = true;
    } else if (key_is("arrow")) {
      auto colon = line.find(':');
      if (colon == std::string::npos)
        syntax_error(lineno, col + 5, "expected 'arrow <id>: <src> -> <tgt>'");
      std::string id = detail::trim(line.substr(5, colon - 5));
      std::string rest = line.substr(colon + 1);
      auto arrow_pos = rest.find("->");
      if (!detail::is_identifier(id) || arrow_pos == std::string::npos)
        syntax_error(lineno, col, "expected 'arrow <id>: <src> -> <tgt>'");
      std::string src = detail::trim(rest.substr(0, arrow_pos));
      std::string tgt = detail::trim(rest.substr(arrow_pos + 2));
      int s = p.vertex_index(src), t = p.vertex_index(tgt);
      if (s < 0 || t < 0)
        throw Error(ErrorKind::UnknownId,
                    "line " + std::to_string(lineno) + ": unknown vertex '" +
                        (s < 0 ? src : tgt) + "'");
      if (p.arrow_index(id) >= 0 || p.vertex_index(id) >= 0)
        syntax_error(lineno, col, "arrow id '" + id +
                                      "' duplicates an existing arrow or vertex");
      p.arrows.push_back({id, s, t});
    } else if (key_is("relations")) {
      std::string body = after_colon("relations");
      std::istringstream rs(body);
      for (std::string rel; std::getline(rs, rel, ';');)
        if (!detail::trim(rel).empty()) pending_relations.emplace_back(lineno, rel);
    } else if (key_is("sigma")) {
      for (auto& t : detail::split_ws(after_colon("sigma")))
        pending_sigma.emplace_back(lineno, t);
    } else if (key_is("epsilon")) {
      for (auto& t : detail::split_ws(after_colon("epsilon")))
        pending_epsilon.emplace_back(lineno, t);
    } else {
      syntax_error(lineno, col, "unrecognised directive '" +
                                    detail::split_ws(line)[0] + "'");
    }
  }

  if (!have_vertices || p.vertices.empty())
    throw Error(ErrorKind::Syntax, "presentation declares no vertices");

  for (auto& [ln, rel] : pending_relations) {
    std::vector<int> path;
    for (auto& id : detail::split_ws(rel)) {
      int a = p.arrow_index(id);
      if (a < 0)
        throw Error(ErrorKind::UnknownId, "line " + std::to_string(ln) +
                                              ": unknown arrow '" + id + "'");
      path.push_back(a);
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      // written "c b": b first, then c, so s(c) must equal t(b)
      if (p.arrows[path[i]].source != p.arrows[path[i + 1]].target)
        throw Error(ErrorKind::NotComposable,
                    "line " + std::to_string(ln) + ": relation '" +
                        detail::trim(rel) + "' is not a composable path");
    }
    if (!p.is_relation(path)) p.relations.push_back(path);
  }

  auto parse_signs = [&](const std::vector<std::pair<int, std::string>>& items,
                         std::vector<int>& out) {
    out.assign(p.arrows.size(), 0);
    for (auto& [ln, item] : items) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        syntax_error(ln, 1, "expected '<arrow>=<+1|-1>' but got '" + item + "'");
      std::string id = item.substr(0, eq), val = item.substr(eq + 1);
      int a = p.arrow_index(id);
      if (a < 0)
        throw Error(ErrorKind::UnknownId,
                    "line " + std::to_string(ln) + ": unknown arrow '" + id + "'");
      if (val == "1" || val == "+1") out[a] = 1;
      else if (val == "-1") out[a] = -1;
      else syntax_error(ln, 1, "sign must be 1 or -1, got '" + val + "'");
    }
  };
  if (!pending_sigma.empty() || !pending_epsilon.empty()) {
    SignAssignment s;
    parse_signs(pending_sigma, s.sigma);
    parse_signs(pending_epsilon, s.epsilon);
    for (std::size_t a = 0; a < p.arrows.size(); ++a)
      if (s.sigma[a] == 0 || s.epsilon[a] == 0)
        throw Error(ErrorKind::Syntax,
                    "sign assignment incomplete for arrow '" + p.arrows[a].id + "'");
    p.signs = s;
  }
  if (p.name.empty()) p.name = "unnamed";
  return p;
}

/// Canonical text form; parse_presentation(serialize(p)) == p.
inline std::string serialize_presentation(const QuiverPresentation& p) {
  std::ostringstream out;
  out << "algebra " << p.name << "\n";
  out << "vertices:";
  for (auto& v : p.vertices) out << ' ' << v;
  out << "\n";
  for (auto& a : p.arrows)
    out << "arrow " << a.id << ": " << p.vertices[a.source] << " -> "
        << p.vertices[a.target] << "\n";
  out << "relations:";
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    out << (r ? ";" : "");
    for (int a : p.relations[r]) out << ' ' << p.arrows[a].id;
  }
  out << "\n";
  if (p.signs) {
    out << "sigma:";
    for (std::size_t a = 0; a < p.arrows.size(); ++a)
      out << ' ' << p.arrows[a].id << '=' << p.signs->sigma[a];
    out << "\nepsilon:";
    for (std::size_t a = 0; a < p.arrows.size(); ++a)
      out << ' ' << p.arrows[a].id << '=' << p.signs->epsilon[a];
    out << "\n";
  }
  return out.str();
}

inline bool operator==(const Arrow& x, const Arrow& y) {
  return x.id == y.id && x.source == y.source && x.target == y.target;
}
inline bool operator==(const QuiverPresentation& x, const QuiverPresentation& y) {
  return x.name == y.name && x.vertices == y.vertices && x.arrows == y.arrows &&
         x.relations == y.relations && x.signs == y.signs;
}

namespace detail {

inline std::size_t max_relation_length(const QuiverPresentation& p) {
  std::size_t m = 0;
  for (auto& r : p.relations) m = std::max(m, r.size());
  return m;
}

// True iff the walk (arrows in traversal order) ends with a relation.
inline bool walk_ends_in_relation(const QuiverPresentation& p,
                                  const std::vector<int>& walk) {
  for (auto& r : p.relations) {
    if (r.size() > walk.size()) continue;
    bool match = true;
    // relation written order is reversed traversal order
    for (std::size_t i = 0; i < r.size() && match; ++i)
      match = walk[walk.size() - 1 - i] == r[i];
    if (match) return true;
  }
  return false;
}

}  // namespace detail

/// Checks whether every sign condition holds; appends violations to `out`.
inline void check_signs(const QuiverPresentation& p, const SignAssignment& s,
                        std::vector<Violation>& out) {
  const int n = p.num_arrows();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (p.arrows[x].source == p.arrows[y].source && s.sigma[x] != -s.sigma[y])
        out.push_back({Axiom::SignConsistency,
                       "sigma(" + p.arrows[x].id + ") must equal -sigma(" +
                           p.arrows[y].id + ")"});
      if (p.arrows[x].target == p.arrows[y].target &&
          s.epsilon[x] != -s.epsilon[y])
        out.push_back({Axiom::SignConsistency,
                       "epsilon(" + p.arrows[x].id + ") must equal -epsilon(" +
                           p.arrows[y].id + ")"});
    }
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c)
      if (p.arrows[b].source == p.arrows[c].target && !p.is_relation({b, c}) &&
          s.sigma[b] != -s.epsilon[c])
        out.push_back({Axiom::SignConsistency,
                       "sigma(" + p.arrows[b].id + ") must equal -epsilon(" +
                           p.arrows[c].id + ")"});
}

/// Checks the string-algebra axioms. Finiteness of relation-avoiding paths
/// is decided on the automaton whose states are the last (L-1) arrows of a
/// walk, L the maximal relation length.
inline ValidationReport validate_string_algebra(const QuiverPresentation& p) {
  ValidationReport rep;
  auto& v = rep.violations;
  const int n = p.num_arrows();

  // (b) finiteness
  const std::size_t window =
      std::max<std::size_t>(1, detail::max_relation_length(p)) - 1;
  {
    std::map<std::vector<int>, int> color;  // 0 unvisited, 1 on stack, 2 done
    std::optional<std::vector<int>> cycle_witness;
    std::function<void(const std::vector<int>&)> dfs =
        [&](const std::vector<int>& walk) {
          std::vector<int> state(
              walk.end() - static_cast<long>(std::min(window, walk.size())),
              walk.end());
          auto& c = color[state];
          if (c == 2 || cycle_witness) return;
          if (c == 1) {
            cycle_witness = walk;
            return;
          }
          c = 1;
          int at = p.arrows[walk.back()].target;
          for (int a = 0; a < n; ++a) {
            if (p.arrows[a].source != at) continue;
            auto next = walk;
            next.push_back(a);
            if (detail::walk_ends_in_relation(p, next)) continue;
            if (next.size() > window + 1) next.erase(next.begin());
            dfs(next);
          }
          color[state] = 2;
        };
    for (int a = 0; a < n && !cycle_witness; ++a)
      if (!p.is_relation({a})) dfs({a});
    if (cycle_witness) {
      std::string locus = "relation-avoiding walk through";
      for (int a : *cycle_witness) locus += " " + p.arrows[a].id;
      locus += " can be repeated forever";
      v.push_back({Axiom::Finiteness, locus});
    }
  }

  // (c) degrees
  for (int x = 0; x < p.num_vertices(); ++x) {
    int out_deg = 0, in_deg = 0;
    for (auto& a : p.arrows) {
      out_deg += a.source == x;
      in_deg += a.target == x;
    }
    if (out_deg > 2)
      v.push_back({Axiom::OutDegree, "vertex " + p.vertices[x] + " has out-degree " +
                                         std::to_string(out_deg)});
    if (in_deg > 2)
      v.push_back({Axiom::InDegree, "vertex " + p.vertices[x] + " has in-degree " +
                                        std::to_string(in_deg)});
  }

  // (d) unique relation-free continuation
  for (int b = 0; b < n; ++b) {
    int succ = 0, pred = 0;
    for (int c = 0; c < n; ++c) {
      if (p.arrows[c].source == p.arrows[b].target && !p.is_relation({c, b})) ++succ;
      if (p.arrows[c].target == p.arrows[b].source && !p.is_relation({b, c})) ++pred;
    }
    if (succ > 1)
      v.push_back({Axiom::UniqueSuccessor,
                   "arrow " + p.arrows[b].id + " has " + std::to_string(succ) +
                       " relation-free successors"});
    if (pred > 1)
      v.push_back({Axiom::UniquePredecessor,
                   "arrow " + p.arrows[b].id + " has " + std::to_string(pred) +
                       " relation-free predecessors"});
  }

  if (p.signs) check_signs(p, *p.signs, v);
  rep.is_string_algebra = v.empty();
  return rep;
}

/// Returns the supplied signs after checking them, or solves the parity
/// constraints. Each free component gets +1 on the lexicographically least
/// arrow (sigma before epsilon).
inline SignAssignment derive_signs(const QuiverPresentation& p) {
  if (p.signs) {
    std::vector<Violation> v;
    check_signs(p, *p.signs, v);
    if (!v.empty())
      throw Error(ErrorKind::SignConflict, "supplied signs violate: " + v[0].locus);
    return *p.signs;
  }
  const int n = p.num_arrows();
  // variable 2a = sigma(a), 2a+1 = epsilon(a); edges force opposite values
  std::vector<std::vector<std::pair<int, std::string>>> adj(2 * n);
  auto name = [&](int var) {
    return std::string(var % 2 ? "epsilon(" : "sigma(") + p.arrows[var / 2].id + ")";
  };
  auto opposite = [&](int x, int y) {
    adj[x].emplace_back(y, name(x) + " = -" + name(y));
    adj[y].emplace_back(x, name(y) + " = -" + name(x));
  };
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (p.arrows[x].source == p.arrows[y].source) opposite(2 * x, 2 * y);
      if (p.arrows[x].target == p.arrows[y].target) opposite(2 * x + 1, 2 * y + 1);
    }
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c)
      if (p.arrows[b].source == p.arrows[c].target && !p.is_relation({b, c}))
        opposite(2 * b, 2 * c + 1);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return p.arrows[x].id < p.arrows[y].id; });

  std::vector<int> value(2 * n, 0);
  std::vector<int> parent(2 * n, -1);
  std::vector<std::string> via(2 * n);
  for (int a : order)
    for (int root : {2 * a, 2 * a + 1}) {
      if (value[root] != 0) continue;
      value[root] = 1;
      std::vector<int> stack{root};
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (auto& [y, why] : adj[x]) {
          if (value[y] == 0) {
            value[y] = -value[x];
            parent[y] = x;
            via[y] = why;
            stack.push_back(y);
          } else if (value[y] == value[x]) {
            std::string cycle = why;
            for (int z = x; parent[z] >= 0; z = parent[z]) cycle += ", " + via[z];
            for (int z = y; parent[z] >= 0; z = parent[z]) cycle += ", " + via[z];
            throw Error(ErrorKind::SignConflict,
                        "odd constraint cycle: " + cycle);
          }
        }
      }
    }
  SignAssignment s;
  s.sigma.resize(n);
  s.epsilon.resize(n);
  for (int a = 0; a < n; ++a) {
    s.sigma[a] = value[2 * a];
    s.epsilon[a] = value[2 * a + 1];
  }
  return s;
}

}  // namespace stralg
