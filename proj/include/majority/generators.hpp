#pragma once

/*
 * Prefixes of countable graphs with truthful degree-class metadata.
 *
 * Every family fixes a numeration of an infinite graph; generate() returns
 * the subgraph induced by the first T vertices, so prefixes of one family
 * are nested: the first T vertices of a larger prefix carry the same edges.
 * Two-sided families interleave their sides (a_1, b_1, a_2, b_2, ...).
 *
 * Directed variants are named "directed_<family>"; their metadata refers to
 * out-degrees and out-neighbourhoods.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "instance_io.hpp"

namespace majority {

struct FamilySpec {
  std::string family;
  int size = 1;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> params;

  int int_param(const std::string& key, int fallback) const {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
      std::size_t used = 0;
      const int v = std::stoi(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("parameter " + key + " must be an integer, got '" + it->second + "'");
    }
  }
};

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {
      "ray",           "double_ray",         "grid",          "infinite_star",
      "infinite_clique", "half_graph",       "complete_bipartite", "star_of_rays",
      "random_locally_finite"};
  return names;
}

inline std::vector<std::string> all_family_names() {
  std::vector<std::string> out = family_names();
  for (const auto& f : family_names()) out.push_back("directed_" + f);
  return out;
}

namespace detail {

// Position of (x, y) in the diagonal enumeration of N x N.
inline std::int64_t cantor(std::int64_t x, std::int64_t y) {
  const std::int64_t d = x + y;
  return d * (d + 1) / 2 + y;
}

inline std::pair<std::int64_t, std::int64_t> cantor_inverse(std::int64_t id) {
  std::int64_t d = 0;
  while ((d + 1) * (d + 2) / 2 <= id) ++d;
  const std::int64_t y = id - d * (d + 1) / 2;
  return {d - y, y};
}

// Z numerated 0, 1, -1, 2, -2, ...
inline std::int64_t z_of(std::int64_t id) { return id % 2 == 1 ? (id + 1) / 2 : -(id / 2); }
inline std::int64_t id_of_z(std::int64_t z) { return z > 0 ? 2 * z - 1 : -2 * z; }

struct Builder {
  int n;
  bool directed;
  std::vector<Edge> edges;
  std::vector<VertexMeta> meta;

  Builder(int t, bool dir) : n(t), directed(dir), meta(static_cast<std::size_t>(t)) {}

  void link(std::int64_t u, std::int64_t v) {
    if (u < n && v < n) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  void finite(Vertex v, bool complete) { meta[v] = {DegreeClass::finite, std::nullopt, complete}; }
  void infinite(Vertex v, Subclass s) { meta[v] = {DegreeClass::infinite, s, false}; }

  Instance finish() const {
    Instance in = directed ? make_instance(Digraph::from_arcs(n, edges))
                           : make_instance(Graph::from_edges(n, edges));
    in.meta = meta;
    validate_meta(in.meta);
    return in;
  }
};

inline std::mt19937_64 vertex_rng(std::uint64_t seed, std::uint64_t v, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(v >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

inline Instance gen_ray(int t, bool dir) {
  Builder b(t, dir);
  for (std::int64_t i = 0; i < t; ++i) {
    b.link(i, i + 1);
    b.finite(static_cast<Vertex>(i), i + 1 < t);
  }
  return b.finish();
}

inline Instance gen_double_ray(int t, bool dir) {
  Builder b(t, dir);
  for (std::int64_t id = 0; id < t; ++id) {
    const auto z = z_of(id);
    b.link(id, id_of_z(z + 1));
    const bool next_in = id_of_z(z + 1) < t;
    const bool prev_in = id_of_z(z - 1) < t;
    b.finite(static_cast<Vertex>(id), dir ? next_in : next_in && prev_in);
  }
  return b.finish();
}

inline Instance gen_grid(int t, bool dir) {
  Builder b(t, dir);
  for (std::int64_t id = 0; id < t; ++id) {
    const auto [x, y] = cantor_inverse(id);
    const auto right = cantor(x + 1, y);
    const auto up = cantor(x, y + 1);
    b.link(id, right);
    b.link(id, up);
    bool complete = right < t && up < t;
    if (!dir) {
      if (x > 0) complete = complete && cantor(x - 1, y) < t;
      if (y > 0) complete = complete && cantor(x, y - 1) < t;
    }
    b.finite(static_cast<Vertex>(id), complete);
  }
  return b.finish();
}

inline Instance gen_infinite_star(int t, bool dir) {
  Builder b(t, dir);
  b.infinite(0, Subclass::B);
  for (std::int64_t leaf = 1; leaf < t; ++leaf) {
    b.link(0, leaf);
    b.finite(static_cast<Vertex>(leaf), true);
  }
  return b.finish();
}

inline Instance gen_infinite_clique(int t, bool dir) {
  Builder b(t, dir);
  for (std::int64_t u = 0; u < t; ++u) {
    b.infinite(static_cast<Vertex>(u), Subclass::A);
    for (std::int64_t v = 0; v < t; ++v)
      if (dir ? u != v : u < v) b.link(u, v);
  }
  return b.finish();
}

// a_i at id 2(i-1), b_j at id 2(j-1)+1; a_i ~ b_j (a_i -> b_j) iff i < j.
inline Instance gen_half_graph(int t, bool dir) {
  Builder b(t, dir);
  for (std::int64_t id = 0; id < t; ++id) {
    const std::int64_t k = id / 2 + 1;
    if (id % 2 == 0) {
      b.infinite(static_cast<Vertex>(id), Subclass::B);
      for (std::int64_t j = k + 1; 2 * (j - 1) + 1 < t; ++j) b.link(id, 2 * (j - 1) + 1);
    } else {
      b.finite(static_cast<Vertex>(id), true);
    }
  }
  return b.finish();
}

inline Instance gen_complete_bipartite(int t, bool dir) {
  Builder b(t, dir);
  for (std::int64_t u = 0; u < t; ++u) {
    b.infinite(static_cast<Vertex>(u), Subclass::A);
    for (std::int64_t v = 0; v < t; ++v)
      if ((u % 2) != (v % 2) && (dir || u < v)) b.link(u, v);
  }
  return b.finish();
}

// Centre at id 0; vertex `pos` of ray k at id 1 + cantor(k, pos).
inline Instance gen_star_of_rays(int t, bool dir) {
  Builder b(t, dir);
  b.infinite(0, Subclass::B);
  for (std::int64_t id = 1; id < t; ++id) {
    const auto [k, pos] = cantor_inverse(id - 1);
    const auto next = 1 + cantor(k, pos + 1);
    if (pos == 0) b.link(0, id);
    b.link(id, next);
    bool complete = next < t;
    if (!dir && pos > 0) complete = complete && 1 + cantor(k, pos - 1) < t;
    b.finite(static_cast<Vertex>(id), complete);
  }
  return b.finish();
}

// Vertex i draws a degree cap in [1, delta]. On arrival it links to earlier
// vertices within a window that still have free slots (each with
// probability 1/2) until its own slots are full. Directed: vertex i first
// picks out-arcs to earlier vertices, then earlier vertices with free
// out-slots may point at i. A vertex is complete once its slots are full,
// since no later vertex can attach to it.
inline Instance gen_random_locally_finite(int t, bool dir, std::uint64_t seed, int delta) {
  if (delta < 1) throw ValidationError("delta must be at least 1");
  constexpr int kWindow = 24;
  Builder b(t, dir);
  std::vector<int> cap(static_cast<std::size_t>(t)), used(static_cast<std::size_t>(t), 0);
  std::vector<std::vector<Vertex>> linked(static_cast<std::size_t>(t));
  auto already = [&](Vertex u, Vertex v) {
    return std::find(linked[u].begin(), linked[u].end(), v) != linked[u].end();
  };
  for (Vertex i = 0; i < t; ++i) {
    auto rng = vertex_rng(seed, static_cast<std::uint64_t>(i), 0x5eed);
    cap[i] = std::uniform_int_distribution<int>(1, delta)(rng);
    std::bernoulli_distribution coin(0.5);
    for (Vertex j = i - 1; j >= std::max(0, i - kWindow) && used[i] < cap[i]; --j) {
      if (!dir && used[j] >= cap[j]) continue;
      if (!coin(rng)) continue;
      b.link(i, j);
      linked[i].push_back(j);
      ++used[i];
      if (!dir) {
        linked[j].push_back(i);
        ++used[j];
      }
    }
    if (dir)
      for (Vertex j = i - 1; j >= std::max(0, i - kWindow); --j) {
        if (used[j] >= cap[j] || already(j, i) || !coin(rng)) continue;
        b.link(j, i);
        linked[j].push_back(i);
        ++used[j];
      }
  }
  for (Vertex i = 0; i < t; ++i) b.finite(i, used[i] >= cap[i]);
  return b.finish();
}

}  // namespace detail

// The prefix of length spec.size. Throws ValidationError on an unknown
// family or bad parameters.
inline Instance generate(const FamilySpec& spec) {
  if (spec.size < 1) throw ValidationError("prefix size must be at least 1");
  std::string name = spec.family;
  bool dir = false;
  if (name.rfind("directed_", 0) == 0) {
    dir = true;
    name = name.substr(9);
  }
  const int t = spec.size;
  if (name == "ray") return detail::gen_ray(t, dir);
  if (name == "double_ray") return detail::gen_double_ray(t, dir);
  if (name == "grid") return detail::gen_grid(t, dir);
  if (name == "infinite_star") return detail::gen_infinite_star(t, dir);
  if (name == "infinite_clique") return detail::gen_infinite_clique(t, dir);
  if (name == "half_graph") return detail::gen_half_graph(t, dir);
  if (name == "complete_bipartite") return detail::gen_complete_bipartite(t, dir);
  if (name == "star_of_rays") return detail::gen_star_of_rays(t, dir);
  if (name == "random_locally_finite")
    return detail::gen_random_locally_finite(t, dir, spec.seed, spec.int_param("delta", 6));
  throw ValidationError("unknown family '" + spec.family + "'");
}

// The same family at a longer prefix. The first spec.size vertices keep
// their edges and degree classes; completeness flags can only switch on.
inline Instance grow(const FamilySpec& spec, int new_size) {
  if (new_size <= spec.size)
    throw ValidationError("grow needs a larger size (" + std::to_string(new_size) +
                          " <= " + std::to_string(spec.size) + ")");
  FamilySpec bigger = spec;
  bigger.size = new_size;
  return generate(bigger);
}

// Random lists for the pipelines: 4 colours on finite-degree vertices, 3 on
// infinite-degree ones, drawn from {0..universe-1}. Per-vertex seeding keeps
// lists stable across prefix lengths.
inline void assign_pipeline_lists(Instance& in, int universe, std::uint64_t seed) {
  if (universe < 4) throw ValidationError("pipeline lists need a universe of at least 4 colors");
  in.lists = ListAssignment(in.size());
  std::vector<Color> pool(static_cast<std::size_t>(universe));
  for (Vertex v = 0; v < in.size(); ++v) {
    auto rng = detail::vertex_rng(seed, static_cast<std::uint64_t>(v), 0x1157);
    for (int k = 0; k < universe; ++k) pool[k] = k;
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t k = in.meta[v].infinite() ? 3 : 4;
    in.lists.set(v, std::vector<Color>(pool.begin(), pool.begin() + static_cast<long>(k)));
  }
}

}  // namespace majority
