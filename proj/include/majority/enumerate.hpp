#pragma once

// Isomorphism classes of small graphs, digraphs and acyclic digraphs
// (n <= 7), encoded as arc bitmasks: bit u*n + v set iff u -> v. An
// undirected graph is stored with both orientations of each edge.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "graph.hpp"

namespace majority::enumerate {

enum class Kind { graph, digraph, dag };

using Mask = std::uint64_t;

inline bool arc(Mask m, int n, int u, int v) { return (m >> (u * n + v)) & 1u; }

namespace detail {

inline Mask relabel(Mask m, int n, const std::array<int, 8>& perm) {
  Mask out = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (arc(m, n, u, v)) out |= Mask{1} << (perm[u] * n + perm[v]);
  return out;
}

// Canonical code: vertices are sorted by an isomorphism-invariant label
// (degrees, then the sorted labels of out- and in-neighbours); the code is
// the smallest relabelled mask over orderings that respect the sort.
inline Mask canonical(Mask m, int n) {
  std::array<std::uint64_t, 8> base{}, label{};
  for (int v = 0; v < n; ++v) {
    int out = 0, in = 0, both = 0;
    for (int u = 0; u < n; ++u) {
      out += arc(m, n, v, u);
      in += arc(m, n, u, v);
      both += arc(m, n, v, u) && arc(m, n, u, v);
    }
    base[v] = (static_cast<std::uint64_t>(out) << 16) | (static_cast<std::uint64_t>(in) << 8) |
              static_cast<std::uint64_t>(both);
  }
  for (int v = 0; v < n; ++v) {
    std::array<std::uint64_t, 8> outs{}, ins{};
    int no = 0, ni = 0;
    for (int u = 0; u < n; ++u) {
      if (arc(m, n, v, u)) outs[no++] = base[u];
      if (arc(m, n, u, v)) ins[ni++] = base[u];
    }
    std::sort(outs.begin(), outs.begin() + no);
    std::sort(ins.begin(), ins.begin() + ni);
    std::uint64_t h = base[v] * 0x9E3779B97F4A7C15ull;
    for (int k = 0; k < no; ++k) h = (h ^ outs[k]) * 0x100000001B3ull;
    h ^= 0xABCDEFull;
    for (int k = 0; k < ni; ++k) h = (h ^ ins[k]) * 0x100000001B3ull;
    label[v] = h;
  }
  std::array<int, 8> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  std::sort(order.begin(), order.begin() + n, [&](int a, int b) { return label[a] < label[b]; });
  // Cells of equal label; permute within each cell.
  std::array<int, 8> cell_end{};
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && label[order[j]] == label[order[i]]) ++j;
    for (int k = i; k < j; ++k) cell_end[k] = j;
    i = j;
  }
  std::array<int, 8> starts{};
  int cells = 0;
  for (int k = 0; k < n; k = cell_end[k]) {
    starts[cells++] = k;
    std::sort(order.begin() + k, order.begin() + cell_end[k]);
  }
  // Odometer over the permutations of every cell.
  Mask best = ~Mask{0};
  std::array<int, 8> perm{};
  bool advanced = true;
  while (advanced) {
    for (int pos = 0; pos < n; ++pos) perm[order[pos]] = pos;
    best = std::min(best, relabel(m, n, perm));
    advanced = false;
    for (int c = cells - 1; c >= 0 && !advanced; --c)
      advanced = std::next_permutation(order.begin() + starts[c], order.begin() + cell_end[starts[c]]);
  }
  return best;
}

inline bool acyclic(Mask m, int n) {
  std::array<int, 8> indeg{};
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) indeg[v] += arc(m, n, u, v);
  int done = 0;
  std::array<char, 8> gone{};
  bool progress = true;
  while (progress) {
    progress = false;
    for (int v = 0; v < n; ++v)
      if (!gone[v] && indeg[v] == 0) {
        gone[v] = 1;
        ++done;
        progress = true;
        for (int w = 0; w < n; ++w)
          if (arc(m, n, v, w)) --indeg[w];
      }
  }
  return done == n;
}

// Re-index an (n-1)-vertex mask into an n-vertex one.
inline Mask widen(Mask m, int from) {
  Mask out = 0;
  for (int u = 0; u < from; ++u)
    for (int v = 0; v < from; ++v)
      if (arc(m, from, u, v)) out |= Mask{1} << (u * (from + 1) + v);
  return out;
}

}  // namespace detail

// Canonical codes of all isomorphism classes on exactly n vertices, in
// ascending order. Built by adding one vertex to every class on n-1
// vertices in all possible ways.
inline std::vector<Mask> classes(Kind kind, int n) {
  if (n < 1 || n > 7) throw std::invalid_argument("enumeration supports 1 <= n <= 7");
  std::vector<Mask> level{0};
  for (int size = 2; size <= n; ++size) {
    std::unordered_set<Mask> seen;
    const int prev = size - 1;
    const int options = kind == Kind::graph ? 2 : kind == Kind::dag ? 3 : 4;
    std::uint64_t patterns = 1;
    for (int k = 0; k < prev; ++k) patterns *= static_cast<std::uint64_t>(options);
    for (Mask rep : level) {
      const Mask wide = detail::widen(rep, prev);
      for (std::uint64_t p = 0; p < patterns; ++p) {
        Mask m = wide;
        std::uint64_t rest = p;
        for (int u = 0; u < prev; ++u) {
          const auto choice = rest % options;
          rest /= options;
          const int nv = prev;
          if (kind == Kind::graph) {
            if (choice == 1) m |= (Mask{1} << (u * size + nv)) | (Mask{1} << (nv * size + u));
          } else {
            if (choice == 1 || choice == 3) m |= Mask{1} << (nv * size + u);
            if (choice == 2 || choice == 3) m |= Mask{1} << (u * size + nv);
          }
        }
        if (kind == Kind::dag && !detail::acyclic(m, size)) continue;
        seen.insert(detail::canonical(m, size));
      }
    }
    level.assign(seen.begin(), seen.end());
    std::sort(level.begin(), level.end());
  }
  return level;
}

inline Graph to_graph(Mask m, int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (arc(m, n, u, v)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

inline Digraph to_digraph(Mask m, int n) {
  std::vector<Edge> arcs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (arc(m, n, u, v)) arcs.emplace_back(u, v);
  return Digraph::from_arcs(n, arcs);
}

inline bool connected(const Graph& g) {
  if (g.size() == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : g.neighbors(v))
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == g.size();
}

}  // namespace majority::enumerate
