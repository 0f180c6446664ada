#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace majority {

// Dense vertex id in [0, n). A countable graph's numeration v_1, v_2, ...
// maps onto ids 0, 1, 2, ... so order carries meaning.
using Vertex = int;

// Opaque non-negative colour.
using Color = int;

inline constexpr Color kUncolored = -1;

using Edge = std::pair<Vertex, Vertex>;

namespace detail {

inline std::string edge_name(Vertex u, Vertex v, const char* sep) {
  return std::to_string(u) + sep + std::to_string(v);
}

inline void check_vertex(Vertex v, int n, const char* what) {
  if (v < 0 || v >= n)
    throw ValidationError(std::string(what) + " " + std::to_string(v) +
                          " out of range [0, " + std::to_string(n) + ")");
}

}  // namespace detail

// Simple undirected graph with sorted adjacency lists.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

  // Rejects self-loops, out-of-range ends and repeated edges (in either
  // orientation).
  static Graph from_edges(int n, std::span<const Edge> edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
      detail::check_vertex(u, n, "edge end");
      detail::check_vertex(v, n, "edge end");
      if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    for (Vertex v = 0; v < n; ++v) {
      auto& a = g.adj_[v];
      std::sort(a.begin(), a.end());
      const auto dup = std::adjacent_find(a.begin(), a.end());
      if (dup != a.end())
        throw ValidationError("duplicate edge " + detail::edge_name(v, *dup, "-"));
    }
    return g;
  }

  // Adjacency must already be simple and symmetric; it is sorted here.
  static Graph from_adjacency(std::vector<std::vector<Vertex>> adj) {
    Graph g;
    g.adj_ = std::move(adj);
    const int n = g.size();
    for (Vertex v = 0; v < n; ++v) {
      auto& a = g.adj_[v];
      std::sort(a.begin(), a.end());
      for (Vertex u : a) {
        detail::check_vertex(u, n, "neighbor");
        if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(v));
      }
      const auto dup = std::adjacent_find(a.begin(), a.end());
      if (dup != a.end())
        throw ValidationError("duplicate neighbor " + std::to_string(*dup) + " of vertex " +
                              std::to_string(v));
    }
    for (Vertex v = 0; v < n; ++v)
      for (Vertex u : g.adj_[v])
        if (!std::binary_search(g.adj_[u].begin(), g.adj_[u].end(), v))
          throw ValidationError("asymmetric adjacency: " + detail::edge_name(v, u, "->") +
                                " present but " + detail::edge_name(u, v, "->") + " missing");
    return g;
  }

  int size() const noexcept { return static_cast<int>(adj_.size()); }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  bool adjacent(Vertex u, Vertex v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& a : adj_) twice += a.size();
    return twice / 2;
  }

  // Each edge once as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < size(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  std::vector<std::vector<Vertex>> adj_;
};

// Directed graph without self-loops or repeated arcs. Antiparallel pairs are
// allowed. Keeps both out- and in-adjacency, each sorted.
class Digraph {
public:
  Digraph() = default;
  explicit Digraph(int n)
      : out_(static_cast<std::size_t>(n)), in_(static_cast<std::size_t>(n)) {}

  static Digraph from_arcs(int n, std::span<const Edge> arcs) {
    Digraph d(n);
    for (auto [u, v] : arcs) {
      detail::check_vertex(u, n, "arc end");
      detail::check_vertex(v, n, "arc end");
      if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
      d.out_[u].push_back(v);
      d.in_[v].push_back(u);
    }
    d.finish();
    return d;
  }

  static Digraph from_out_adjacency(std::vector<std::vector<Vertex>> out) {
    const int n = static_cast<int>(out.size());
    std::vector<Edge> arcs;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v : out[u]) arcs.emplace_back(u, v);
    return from_arcs(n, arcs);
  }

  int size() const noexcept { return static_cast<int>(out_.size()); }

  std::span<const Vertex> out_neighbors(Vertex v) const { return out_[v]; }
  std::span<const Vertex> in_neighbors(Vertex v) const { return in_[v]; }
  int out_degree(Vertex v) const { return static_cast<int>(out_[v].size()); }
  int in_degree(Vertex v) const { return static_cast<int>(in_[v].size()); }

  bool has_arc(Vertex u, Vertex v) const {
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
  }

  std::size_t arc_count() const {
    std::size_t m = 0;
    for (const auto& a : out_) m += a.size();
    return m;
  }

  std::vector<Edge> arcs() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < size(); ++u)
      for (Vertex v : out_[u]) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.out_ == b.out_; }

private:
  void finish() {
    for (Vertex v = 0; v < size(); ++v) {
      std::sort(out_[v].begin(), out_[v].end());
      std::sort(in_[v].begin(), in_[v].end());
      const auto dup = std::adjacent_find(out_[v].begin(), out_[v].end());
      if (dup != out_[v].end())
        throw ValidationError("duplicate arc " + detail::edge_name(v, *dup, "->"));
    }
  }

  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

// Per-vertex colour lists. A vertex without a list has an empty span; every
// list that is present is nonempty, non-negative and repetition free.
class ListAssignment {
public:
  ListAssignment() = default;
  explicit ListAssignment(int n) : lists_(static_cast<std::size_t>(n)) {}

  static ListAssignment uniform(int n, std::vector<Color> colors) {
    ListAssignment la(n);
    for (Vertex v = 0; v < n; ++v) la.set(v, colors);
    return la;
  }

  void set(Vertex v, std::vector<Color> colors) {
    detail::check_vertex(v, size(), "list vertex");
    if (colors.empty()) throw ValidationError("empty list at vertex " + std::to_string(v));
    for (std::size_t i = 0; i < colors.size(); ++i) {
      if (colors[i] < 0)
        throw ValidationError("negative color at vertex " + std::to_string(v));
      for (std::size_t j = 0; j < i; ++j)
        if (colors[i] == colors[j])
          throw ValidationError("repeated color " + std::to_string(colors[i]) +
                                " in list of vertex " + std::to_string(v));
    }
    lists_[v] = std::move(colors);
  }

  void clear(Vertex v) { lists_[v].clear(); }

  int size() const noexcept { return static_cast<int>(lists_.size()); }
  bool has(Vertex v) const { return !lists_[v].empty(); }
  std::span<const Color> operator[](Vertex v) const { return lists_[v]; }

  bool contains(Vertex v, Color c) const {
    return std::find(lists_[v].begin(), lists_[v].end(), c) != lists_[v].end();
  }

  // Throws unless every vertex in `vertices` carries a list of exactly `k`.
  template <class Range>
  void require_size(const Range& vertices, std::size_t k, const char* role) const {
    for (Vertex v : vertices) {
      detail::check_vertex(v, size(), "list vertex");
      if (lists_[v].size() != k)
        throw ValidationError(std::string(role) + " vertex " + std::to_string(v) + " needs a " +
                              std::to_string(k) + "-list, has " +
                              std::to_string(lists_[v].size()));
    }
  }

  friend bool operator==(const ListAssignment&, const ListAssignment&) = default;

private:
  std::vector<std::vector<Color>> lists_;
};

// Partial map vertex -> colour.
class Coloring {
public:
  Coloring() = default;
  explicit Coloring(int n) : colors_(static_cast<std::size_t>(n), kUncolored) {}

  // The first colour of each list; uncoloured where there is no list.
  static Coloring first_choice(const ListAssignment& lists) {
    Coloring c(lists.size());
    for (Vertex v = 0; v < lists.size(); ++v)
      if (lists.has(v)) c.set(v, lists[v][0]);
    return c;
  }

  int size() const noexcept { return static_cast<int>(colors_.size()); }
  bool colored(Vertex v) const { return colors_[v] != kUncolored; }
  Color operator[](Vertex v) const { return colors_[v]; }

  Color at(Vertex v) const {
    if (v < 0 || v >= size() || colors_[v] == kUncolored) throw PartialColoringError(v);
    return colors_[v];
  }

  void set(Vertex v, Color c) { colors_[v] = c; }
  void clear(Vertex v) { colors_[v] = kUncolored; }

  bool total() const {
    return std::none_of(colors_.begin(), colors_.end(),
                        [](Color c) { return c == kUncolored; });
  }

  // First vertex whose colour lies outside its list, if any. Vertices
  // without a list or without a colour are skipped.
  std::optional<Vertex> outside_lists(const ListAssignment& lists) const {
    for (Vertex v = 0; v < size() && v < lists.size(); ++v)
      if (colored(v) && lists.has(v) && !lists.contains(v, colors_[v])) return v;
    return std::nullopt;
  }

  friend bool operator==(const Coloring&, const Coloring&) = default;

private:
  std::vector<Color> colors_;
};

// Exact weight r_v(x) per (vertex, colour).
class WeightMap {
public:
  WeightMap() = default;
  explicit WeightMap(int n) : entries_(static_cast<std::size_t>(n)) {}

  // r_v(x) = value(v) on every colour of L(v), for each v in `vertices`.
  template <class Range, class Fn>
  static WeightMap constant_per_vertex(const ListAssignment& lists, const Range& vertices,
                                       Fn value) {
    WeightMap w(lists.size());
    for (Vertex v : vertices)
      for (Color x : lists[v]) w.set(v, x, value(v));
    return w;
  }

  int size() const noexcept { return static_cast<int>(entries_.size()); }

  void set(Vertex v, Color x, Rational r) {
    detail::check_vertex(v, size(), "weight vertex");
    for (auto& [c, w] : entries_[v])
      if (c == x) {
        w = r;
        return;
      }
    entries_[v].emplace_back(x, r);
  }

  std::optional<Rational> find(Vertex v, Color x) const {
    for (const auto& [c, w] : entries_[v])
      if (c == x) return w;
    return std::nullopt;
  }

  Rational at(Vertex v, Color x) const {
    if (auto r = find(v, x)) return *r;
    throw ValidationError("no weight for vertex " + std::to_string(v) + " color " +
                          std::to_string(x));
  }

  bool has(Vertex v) const { return !entries_[v].empty(); }

  std::span<const std::pair<Color, Rational>> entries(Vertex v) const { return entries_[v]; }

  // Sum of r_v(x) over x in L(v).
  Rational list_sum(Vertex v, const ListAssignment& lists) const {
    Rational s;
    for (Color x : lists[v]) s += at(v, x);
    return s;
  }

  // Throws unless, for every v in `vertices`, weights are defined on exactly
  // the colours of L(v).
  template <class Range>
  void require_domain(const ListAssignment& lists, const Range& vertices) const {
    for (Vertex v : vertices) {
      for (Color x : lists[v]) (void)at(v, x);
      for (const auto& [c, w] : entries_[v])
        if (!lists.contains(v, c))
          throw ValidationError("weight for vertex " + std::to_string(v) + " on color " +
                                std::to_string(c) + " outside its list");
    }
  }

  friend bool operator==(const WeightMap& a, const WeightMap& b) {
    if (a.size() != b.size()) return false;
    for (Vertex v = 0; v < a.size(); ++v) {
      if (a.entries_[v].size() != b.entries_[v].size()) return false;
      for (const auto& [c, w] : a.entries_[v])
        if (b.find(v, c) != w) return false;
    }
    return true;
  }

private:
  std::vector<std::vector<std::pair<Color, Rational>>> entries_;
};

enum class DegreeClass { finite, infinite };
enum class Subclass { A, B };

// Degree-class metadata for one vertex of a countable-graph prefix.
struct VertexMeta {
  DegreeClass degree = DegreeClass::finite;
  std::optional<Subclass> subclass;
  // All neighbours (out-neighbours, directed) in the countable graph lie in
  // the prefix. Only meaningful for finite-degree vertices.
  bool complete = false;

  bool infinite() const noexcept { return degree == DegreeClass::infinite; }

  friend bool operator==(const VertexMeta&, const VertexMeta&) = default;
};

inline void validate_meta(std::span<const VertexMeta> meta) {
  for (std::size_t v = 0; v < meta.size(); ++v) {
    const auto& m = meta[v];
    const auto id = std::to_string(v);
    if (m.complete && m.infinite())
      throw ValidationError("vertex " + id + " is flagged complete but has infinite degree");
    if (m.infinite() && !m.subclass)
      throw ValidationError("infinite-degree vertex " + id + " lacks class A/B");
    if (!m.infinite() && m.subclass)
      throw ValidationError("finite-degree vertex " + id + " carries a class");
  }
}

// Finite truncation of a countable graph (G = Graph) or digraph
// (G = Digraph) plus per-vertex degree-class metadata.
template <class G>
struct Prefix {
  G graph;
  std::vector<VertexMeta> meta;

  Prefix() = default;
  Prefix(G g, std::vector<VertexMeta> m) : graph(std::move(g)), meta(std::move(m)) {
    if (static_cast<int>(meta.size()) != graph.size())
      throw ValidationError("metadata size does not match vertex count");
    validate_meta(meta);
  }

  int size() const { return graph.size(); }

  std::vector<Vertex> finite_vertices() const { return select(false); }
  std::vector<Vertex> infinite_vertices() const { return select(true); }

  std::vector<Vertex> subclass_vertices(Subclass s) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < size(); ++v)
      if (meta[v].subclass == s) out.push_back(v);
    return out;
  }

  friend bool operator==(const Prefix&, const Prefix&) = default;

private:
  std::vector<Vertex> select(bool infinite) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < size(); ++v)
      if (meta[v].infinite() == infinite) out.push_back(v);
    return out;
  }
};

using PrefixInstance = Prefix<Graph>;
using DirectedPrefix = Prefix<Digraph>;

// Result of restricting a graph to a vertex subset. `to_original[i]` is the
// original id of local vertex i; `to_local[v]` is -1 for dropped vertices.
template <class G>
struct Induced {
  G graph;
  std::vector<Vertex> to_original;
  std::vector<Vertex> to_local;
};

namespace detail {

inline void build_remap(int n, std::span<const Vertex> keep, std::vector<Vertex>& to_original,
                        std::vector<Vertex>& to_local) {
  to_original.assign(keep.begin(), keep.end());
  for (Vertex v : to_original) check_vertex(v, n, "kept vertex");
  std::sort(to_original.begin(), to_original.end());
  to_original.erase(std::unique(to_original.begin(), to_original.end()), to_original.end());
  to_local.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < to_original.size(); ++i)
    to_local[to_original[i]] = static_cast<Vertex>(i);
}

}  // namespace detail

// G[keep]: kept vertices are renumbered in ascending original order.
inline Induced<Graph> induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  Induced<Graph> out;
  detail::build_remap(g.size(), keep, out.to_original, out.to_local);
  std::vector<std::vector<Vertex>> adj(out.to_original.size());
  for (std::size_t i = 0; i < out.to_original.size(); ++i)
    for (Vertex u : g.neighbors(out.to_original[i]))
      if (out.to_local[u] >= 0) adj[i].push_back(out.to_local[u]);
  out.graph = Graph::from_adjacency(std::move(adj));
  return out;
}

inline Induced<Digraph> induced_subgraph(const Digraph& d, std::span<const Vertex> keep) {
  Induced<Digraph> out;
  detail::build_remap(d.size(), keep, out.to_original, out.to_local);
  std::vector<std::vector<Vertex>> adj(out.to_original.size());
  for (std::size_t i = 0; i < out.to_original.size(); ++i)
    for (Vertex u : d.out_neighbors(out.to_original[i]))
      if (out.to_local[u] >= 0) adj[i].push_back(out.to_local[u]);
  out.graph = Digraph::from_out_adjacency(std::move(adj));
  return out;
}

// Membership mask for a vertex subset.
inline std::vector<char> membership(int n, std::span<const Vertex> vs) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v : vs) {
    detail::check_vertex(v, n, "vertex");
    in[v] = 1;
  }
  return in;
}

}  // namespace majority
