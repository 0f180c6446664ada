#pragma once

/*
 * Line-oriented instance format.
 *
 *   graph undirected | graph directed        header, first record
 *   v <id> [deg=finite|deg=infinite] [class=A|class=B] [complete]
 *   e <u> <v>                                edge, or arc u->v when directed
 *   l <id> <c1> <c2> ...                     colour list
 *   l' <id> <c1> <c2>                        chosen sublist
 *   r <id> <color> <num>/<den>               weight r_v(color)
 *   s <index> <id> <id> ...                  family member (back-and-forth)
 *
 * '#' starts a comment. Vertex ids must be declared once each and be dense
 * 0..n-1. Colourings live in their own files as `c <id> <color>` lines.
 */

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace majority {

struct Instance {
  std::variant<Graph, Digraph> topology;
  std::vector<VertexMeta> meta;
  ListAssignment lists;
  ListAssignment sublists;
  WeightMap weights;
  // Family sets ordered by their declared index.
  std::vector<int> set_indices;
  std::vector<std::vector<Vertex>> sets;

  bool directed() const { return std::holds_alternative<Digraph>(topology); }

  int size() const {
    return std::visit([](const auto& g) { return g.size(); }, topology);
  }

  const Graph& graph() const {
    if (directed()) throw ValidationError("instance is directed, an undirected graph is required");
    return std::get<Graph>(topology);
  }

  const Digraph& digraph() const {
    if (!directed()) throw ValidationError("instance is undirected, a digraph is required");
    return std::get<Digraph>(topology);
  }

  bool has_metadata() const {
    return std::any_of(meta.begin(), meta.end(),
                       [](const VertexMeta& m) { return !(m == VertexMeta{}); });
  }

  PrefixInstance prefix() const { return PrefixInstance(graph(), meta); }
  DirectedPrefix directed_prefix() const { return DirectedPrefix(digraph(), meta); }

  bool has_any_lists() const {
    for (Vertex v = 0; v < lists.size(); ++v)
      if (lists.has(v)) return true;
    return false;
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

inline Instance make_instance(Graph g) {
  Instance in;
  const int n = g.size();
  in.topology = std::move(g);
  in.meta.assign(static_cast<std::size_t>(n), VertexMeta{});
  in.lists = ListAssignment(n);
  in.sublists = ListAssignment(n);
  in.weights = WeightMap(n);
  return in;
}

inline Instance make_instance(Digraph d) {
  Instance in;
  const int n = d.size();
  in.topology = std::move(d);
  in.meta.assign(static_cast<std::size_t>(n), VertexMeta{});
  in.lists = ListAssignment(n);
  in.sublists = ListAssignment(n);
  in.weights = WeightMap(n);
  return in;
}

template <class G>
Instance make_instance(const Prefix<G>& p) {
  Instance in = make_instance(p.graph);
  in.meta = p.meta;
  return in;
}

namespace detail {

inline std::vector<std::string_view> tokenize(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos)
    line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline int parse_int_token(std::string_view tok, std::size_t line, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected integer ") + what + ", got '" +
                               std::string(tok) + "'");
  return v;
}

template <class Fn>
void for_each_line(std::string_view text, Fn fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    ++line_no;
    auto toks = tokenize(text.substr(pos, end - pos));
    if (!toks.empty()) fn(line_no, toks);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  struct PendingVertex {
    VertexMeta meta;
    std::size_t line = 0;
  };
  struct Rec {
    std::size_t line;
    std::vector<int> ints;
  };
  struct WeightRec {
    std::size_t line;
    Vertex v;
    Color x;
    Rational r;
  };

  std::optional<bool> directed;
  std::map<Vertex, PendingVertex> vertices;
  std::vector<Rec> edges, lists, sublists, sets;
  std::vector<WeightRec> weights;

  detail::for_each_line(text, [&](std::size_t ln, const std::vector<std::string_view>& t) {
    const auto kw = t[0];
    if (!directed) {
      if (kw != "graph" || t.size() != 2 || (t[1] != "undirected" && t[1] != "directed"))
        throw ParseError(ln, "expected header 'graph undirected' or 'graph directed'");
      directed = t[1] == "directed";
      return;
    }
    auto ints_from = [&](std::size_t first) {
      std::vector<int> out;
      for (std::size_t i = first; i < t.size(); ++i)
        out.push_back(detail::parse_int_token(t[i], ln, "id/color"));
      return out;
    };
    if (kw == "graph") throw ParseError(ln, "duplicate header");
    if (kw == "v") {
      if (t.size() < 2) throw ParseError(ln, "vertex record needs an id");
      const Vertex id = detail::parse_int_token(t[1], ln, "vertex id");
      if (id < 0) throw ParseError(ln, "negative vertex id");
      PendingVertex pv;
      pv.line = ln;
      for (std::size_t i = 2; i < t.size(); ++i) {
        const auto key = t[i];
        if (key == "deg=finite") pv.meta.degree = DegreeClass::finite;
        else if (key == "deg=infinite") pv.meta.degree = DegreeClass::infinite;
        else if (key == "class=A") pv.meta.subclass = Subclass::A;
        else if (key == "class=B") pv.meta.subclass = Subclass::B;
        else if (key == "complete") pv.meta.complete = true;
        else throw ParseError(ln, "unknown vertex key '" + std::string(key) + "'");
      }
      if (!vertices.emplace(id, pv).second)
        throw ParseError(ln, "vertex " + std::to_string(id) + " declared twice");
    } else if (kw == "e") {
      if (t.size() != 3) throw ParseError(ln, "edge record needs exactly two ids");
      edges.push_back({ln, ints_from(1)});
    } else if (kw == "l" || kw == "l'") {
      if (t.size() < 3) throw ParseError(ln, "list record needs an id and colors");
      (kw == "l" ? lists : sublists).push_back({ln, ints_from(1)});
    } else if (kw == "r") {
      if (t.size() != 4) throw ParseError(ln, "weight record is 'r <id> <color> <num>/<den>'");
      WeightRec w{ln, detail::parse_int_token(t[1], ln, "vertex id"),
                  detail::parse_int_token(t[2], ln, "color"), Rational{}};
      try {
        w.r = Rational::parse(t[3]);
      } catch (const std::exception& e) {
        throw ParseError(ln, e.what());
      }
      weights.push_back(w);
    } else if (kw == "s") {
      if (t.size() < 2) throw ParseError(ln, "set record needs an index");
      sets.push_back({ln, ints_from(1)});
    } else {
      throw ParseError(ln, "unknown record '" + std::string(kw) + "'");
    }
  });

  if (!directed) throw ParseError(0, "missing header");

  const int n = static_cast<int>(vertices.size());
  {
    Vertex expect = 0;
    for (const auto& [id, pv] : vertices) {
      if (id != expect)
        throw ValidationError("vertex ids must be dense 0..n-1; vertex " +
                              std::to_string(expect) + " is missing");
      ++expect;
    }
  }
  auto at_line = [](std::size_t ln, const std::string& msg) {
    return "line " + std::to_string(ln) + ": " + msg;
  };
  auto check = [&](Vertex v, std::size_t ln) {
    if (v < 0 || v >= n)
      throw ValidationError(at_line(ln, "undeclared vertex " + std::to_string(v)));
  };

  std::vector<Edge> edge_list;
  for (const auto& r : edges) {
    check(r.ints[0], r.line);
    check(r.ints[1], r.line);
    if (r.ints[0] == r.ints[1])
      throw ValidationError(at_line(r.line, "self-loop at vertex " + std::to_string(r.ints[0])));
    edge_list.emplace_back(r.ints[0], r.ints[1]);
  }

  Instance in = *directed ? make_instance(Digraph::from_arcs(n, edge_list))
                          : make_instance(Graph::from_edges(n, edge_list));
  for (const auto& [id, pv] : vertices) in.meta[id] = pv.meta;
  validate_meta(in.meta);

  auto fill_lists = [&](const std::vector<Rec>& recs, ListAssignment& la) {
    for (const auto& r : recs) {
      check(r.ints[0], r.line);
      if (la.has(r.ints[0]))
        throw ValidationError(at_line(r.line, "second list for vertex " + std::to_string(r.ints[0])));
      try {
        la.set(r.ints[0], std::vector<Color>(r.ints.begin() + 1, r.ints.end()));
      } catch (const ValidationError& e) {
        throw ValidationError(at_line(r.line, e.what()));
      }
    }
  };
  fill_lists(lists, in.lists);
  fill_lists(sublists, in.sublists);

  for (const auto& w : weights) {
    check(w.v, w.line);
    if (!in.lists.contains(w.v, w.x))
      throw ValidationError(at_line(w.line, "weight color " + std::to_string(w.x) +
                                                " is not in the list of vertex " +
                                                std::to_string(w.v)));
    if (in.weights.find(w.v, w.x))
      throw ValidationError(at_line(w.line, "repeated weight record"));
    in.weights.set(w.v, w.x, w.r);
  }

  std::map<int, std::vector<Vertex>> by_index;
  for (const auto& r : sets) {
    if (r.ints[0] < 1) throw ValidationError(at_line(r.line, "set index must be positive"));
    std::vector<Vertex> members(r.ints.begin() + 1, r.ints.end());
    for (Vertex v : members) check(v, r.line);
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
      throw ValidationError(at_line(r.line, "repeated member in set"));
    if (!by_index.emplace(r.ints[0], std::move(members)).second)
      throw ValidationError(at_line(r.line, "set index declared twice"));
  }
  for (auto& [idx, members] : by_index) {
    in.set_indices.push_back(idx);
    in.sets.push_back(std::move(members));
  }
  return in;
}

inline std::string serialize_instance(const Instance& in) {
  std::ostringstream os;
  os << "graph " << (in.directed() ? "directed" : "undirected") << '\n';
  const bool meta = in.has_metadata();
  for (Vertex v = 0; v < in.size(); ++v) {
    os << "v " << v;
    if (meta) {
      const auto& m = in.meta[v];
      os << (m.infinite() ? " deg=infinite" : " deg=finite");
      if (m.subclass) os << (*m.subclass == Subclass::A ? " class=A" : " class=B");
      if (m.complete) os << " complete";
    }
    os << '\n';
  }
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Graph>) {
          for (auto [u, v] : g.edges()) os << "e " << u << ' ' << v << '\n';
        } else {
          for (auto [u, v] : g.arcs()) os << "e " << u << ' ' << v << '\n';
        }
      },
      in.topology);
  auto emit_lists = [&](const ListAssignment& la, const char* kw) {
    for (Vertex v = 0; v < la.size(); ++v) {
      if (!la.has(v)) continue;
      os << kw << ' ' << v;
      for (Color c : la[v]) os << ' ' << c;
      os << '\n';
    }
  };
  emit_lists(in.lists, "l");
  emit_lists(in.sublists, "l'");
  for (Vertex v = 0; v < in.weights.size(); ++v)
    for (Color x : in.lists[v])
      if (auto r = in.weights.find(v, x))
        os << "r " << v << ' ' << x << ' ' << r->numerator() << '/' << r->denominator() << '\n';
  for (std::size_t i = 0; i < in.sets.size(); ++i) {
    os << "s " << in.set_indices[i];
    for (Vertex v : in.sets[i]) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

// `c <id> <color>` lines; vertices not mentioned stay uncoloured.
inline Coloring parse_coloring(std::string_view text, int n) {
  Coloring c(n);
  detail::for_each_line(text, [&](std::size_t ln, const std::vector<std::string_view>& t) {
    if (t[0] != "c" || t.size() != 3) throw ParseError(ln, "expected 'c <id> <color>'");
    const Vertex v = detail::parse_int_token(t[1], ln, "vertex id");
    const Color x = detail::parse_int_token(t[2], ln, "color");
    if (v < 0 || v >= n) throw ValidationError("line " + std::to_string(ln) +
                                               ": vertex " + std::to_string(v) + " out of range");
    if (x < 0) throw ParseError(ln, "negative color");
    if (c.colored(v)) throw ParseError(ln, "vertex " + std::to_string(v) + " colored twice");
    c.set(v, x);
  });
  return c;
}

inline std::string serialize_coloring(const Coloring& c) {
  std::ostringstream os;
  for (Vertex v = 0; v < c.size(); ++v)
    if (c.colored(v)) os << "c " << v << ' ' << c[v] << '\n';
  return os.str();
}

}  // namespace majority
