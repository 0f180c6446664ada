#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "rational.hpp"
#include "stages.hpp"
#include "verify.hpp"

namespace majority {

// ---------------------------------------------------------------------------
// Bad-edge minimising switches from 2-lists.

struct LovaszResult {
  Coloring coloring;
  std::size_t switches = 0;
  // Total number of bad edges at the start and after every switch.
  std::vector<std::size_t> bad_trace;
};

// Starts from the first colour of every list and, while some vertex has
// more bad than good edges, switches the lowest such vertex to its other
// colour. Every switch lowers the total bad-edge count, so at most |E|
// switches happen.
inline LovaszResult lovasz_switch_solve(const Graph& g, const ListAssignment& lists) {
  const int n = g.size();
  if (lists.size() != n) throw ValidationError("list assignment size does not match graph");
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  lists.require_size(all, 2, "");

  LovaszResult res;
  res.coloring = Coloring::first_choice(lists);
  auto& c = res.coloring;
  std::size_t total = total_bad_edges(g, c);
  res.bad_trace.push_back(total);
  for (Vertex v = 0; v < n;) {
    int bad = 0;
    for (Vertex u : g.neighbors(v)) bad += c[u] == c[v];
    if (2 * bad <= g.degree(v)) {
      ++v;
      continue;
    }
    const Color other = lists[v][0] == c[v] ? lists[v][1] : lists[v][0];
    int bad_after = 0;
    for (Vertex u : g.neighbors(v)) bad_after += c[u] == other;
    c.set(v, other);
    total = total - static_cast<std::size_t>(bad) + static_cast<std::size_t>(bad_after);
    res.bad_trace.push_back(total);
    ++res.switches;
    v = 0;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Weighted potential local search.
//
// F is coloured from 4-lists; every u in I (independent) will later take a
// colour from its 2-list L'(u). For v in F and x in L(v):
//   nF_v(x) = #F-neighbours coloured x,   m_v(x) = #I-neighbours with x in L'(u).
// The potential
//   Phi(c) = B_c + M_c - 1/2 * sum_{v in F} (r_v(c(v)) - sum_{x != c(v)} r_v(x))
// with B_c the bad edges inside F and M_c = sum_v m_v(c(v)) changes, when v
// moves from a to b, by exactly
//   (nF_v(b) + m_v(b) - r_v(b)) - (nF_v(a) + m_v(a) - r_v(a)).
// If v is over its bound at a, the lists-of-two on I and
// sum_x r_v(x) >= 2 deg(v) force some b with a negative bracket, so the
// move lowers Phi.

struct PotentialLedger {
  std::int64_t bad_edges = 0;  // B_c, inside G[F]
  std::int64_t m_total = 0;    // M_c
  Rational weight_term;        // 1/2 * sum_v (r_v(c(v)) - sum_{x != c(v)} r_v(x))

  Rational phi() const { return Rational(bad_edges + m_total) - weight_term; }
};

// Recomputes the ledger from scratch for a colouring of F.
inline PotentialLedger potential_ledger(const Graph& g, std::span<const Vertex> f,
                                        std::span<const Vertex> i, const Coloring& c,
                                        const ListAssignment& lists,
                                        const ListAssignment& lists_i, const WeightMap& r) {
  const auto in_f = membership(g.size(), f);
  const auto in_i = membership(g.size(), i);
  PotentialLedger led;
  for (Vertex v : f) {
    const Color cv = c.at(v);
    for (Vertex u : g.neighbors(v)) {
      if (in_f[u] && u > v && c.at(u) == cv) ++led.bad_edges;
      if (in_i[u] && lists_i.contains(u, cv)) ++led.m_total;
    }
    Rational term = r.at(v, cv);
    for (Color x : lists[v])
      if (x != cv) term -= r.at(v, x);
    led.weight_term += term;
  }
  led.weight_term = led.weight_term * Rational(1, 2);
  return led;
}

struct BernardiResult {
  Coloring coloring;  // coloured on F only
  std::size_t switches = 0;
  // Phi at the start and after every switch; strictly decreasing.
  std::vector<Rational> potential_trace;
};

namespace detail {

struct FiPartition {
  std::vector<char> in_f;
  std::vector<char> in_i;
};

template <class G>
FiPartition check_partition(const G& g, std::span<const Vertex> f, std::span<const Vertex> i) {
  const auto s = check_split(g, f, i);
  for (Vertex v = 0; v < g.size(); ++v)
    if (!s.in_f[v] && !s.in_i[v])
      throw ValidationError("vertex " + std::to_string(v) + " is in neither F nor I");
  return {s.in_f, s.in_i};
}

}  // namespace detail

// Colours F so that nF_v(c(v)) + m_v(c(v)) <= r_v(c(v)) for every v in F,
// which bounds v's bad edges by r_v(c(v)) under every colouring of I from L'.
// Requires sum_{x in L(v)} r_v(x) >= 2 deg(v) for each v in F.
inline BernardiResult bernardi_weighted_solve(const Graph& g, std::span<const Vertex> f,
                                              std::span<const Vertex> i,
                                              const ListAssignment& lists,
                                              const ListAssignment& lists_i,
                                              const WeightMap& r) {
  const int n = g.size();
  const auto part = detail::check_partition(g, f, i);
  lists.require_size(f, 4, "F");
  lists_i.require_size(i, 2, "I");
  r.require_domain(lists, f);
  for (Vertex v : f)
    if (r.list_sum(v, lists) < Rational(2 * g.degree(v)))
      throw InfeasibleError(v, "vertex " + std::to_string(v) +
                                   ": sum of weights " + r.list_sum(v, lists).to_string() +
                                   " is below 2*deg = " + std::to_string(2 * g.degree(v)));

  struct Slot {
    std::array<Color, 4> colors{};
    std::array<int, 4> nf{};
    std::array<int, 4> m{};
    std::array<Rational, 4> r{};
    int cur = 0;

    int index_of(Color x) const {
      for (int k = 0; k < 4; ++k)
        if (colors[k] == x) return k;
      return -1;
    }
    Rational excess(int k) const { return Rational(nf[k] + m[k]) - r[k]; }
  };
  std::vector<Slot> slot(static_cast<std::size_t>(n));
  for (Vertex v : f) {
    auto& s = slot[v];
    for (int k = 0; k < 4; ++k) {
      s.colors[k] = lists[v][k];
      s.r[k] = r.at(v, s.colors[k]);
    }
    for (Vertex u : g.neighbors(v))
      if (part.in_i[u])
        for (int k = 0; k < 4; ++k) s.m[k] += lists_i.contains(u, s.colors[k]);
  }
  BernardiResult res;
  res.coloring = Coloring(n);
  for (Vertex v : f) res.coloring.set(v, slot[v].colors[0]);
  for (Vertex v : f)
    for (Vertex u : g.neighbors(v))
      if (part.in_f[u]) {
        const int k = slot[v].index_of(res.coloring[u]);
        if (k >= 0) ++slot[v].nf[k];
      }

  Rational phi = potential_ledger(g, f, i, res.coloring, lists, lists_i, r).phi();
  res.potential_trace.push_back(phi);
  std::vector<Vertex> order(f.begin(), f.end());
  std::sort(order.begin(), order.end());
  std::size_t pos = 0;
  while (pos < order.size()) {
    const Vertex v = order[pos];
    auto& s = slot[v];
    const Rational now = s.excess(s.cur);
    if (now <= Rational(0)) {
      ++pos;
      continue;
    }
    int best = 0;
    Rational best_excess = s.excess(0);
    for (int k = 1; k < 4; ++k)
      if (const auto e = s.excess(k); e < best_excess) {
        best = k;
        best_excess = e;
      }
    const Rational delta = best_excess - now;
    if (delta >= Rational(0))
      throw std::logic_error("no improving color at vertex " + std::to_string(v));
    const Color from = s.colors[s.cur];
    const Color to = s.colors[best];
    s.cur = best;
    res.coloring.set(v, to);
    for (Vertex u : g.neighbors(v)) {
      if (!part.in_f[u]) continue;
      auto& t = slot[u];
      if (const int k = t.index_of(from); k >= 0) --t.nf[k];
      if (const int k = t.index_of(to); k >= 0) ++t.nf[k];
    }
    phi += delta;
    res.potential_trace.push_back(phi);
    ++res.switches;
    pos = 0;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Three-stage colouring of a countable-graph prefix from 4-lists on
// finite-degree vertices (F) and 3-lists on infinite-degree vertices (I).
//
//   1. Back-and-forth over {N[u] ∩ I : u in A} picks 2-sublists L' on I.
//   2. The weighted search colours F on F plus all F-I edges, with
//      r_v(x) = deg(v)/2; the result is a majority colouring at every F-vertex
//      whatever I later takes from L'.
//   3. I is coloured from L' (class B steers clear of a dominant colour in
//      its F-neighbourhood).

inline PipelineResult three_stage_solve(const PrefixInstance& p, const ListAssignment& lists,
                                        std::size_t amc_threshold = 3) {
  const int n = p.size();
  if (static_cast<int>(p.meta.size()) != n) throw ValidationError("missing metadata");
  validate_meta(p.meta);
  if (lists.size() != n) throw ValidationError("list assignment size does not match graph");
  const auto f = p.finite_vertices();
  const auto i = p.infinite_vertices();
  lists.require_size(f, 4, "finite-degree");
  lists.require_size(i, 3, "infinite-degree");

  PipelineResult out;
  auto& rep = out.report;
  rep.amc_threshold = amc_threshold;
  detail::run_stage1(p, lists, rep);

  std::vector<std::vector<Vertex>> host(static_cast<std::size_t>(n));
  for (Vertex v : f)
    for (Vertex u : p.graph.neighbors(v)) {
      host[v].push_back(u);
      if (p.meta[u].infinite()) host[u].push_back(v);
    }
  const Graph host_graph = Graph::from_adjacency(std::move(host));
  const auto r = WeightMap::constant_per_vertex(
      lists, f, [&](Vertex v) { return Rational(p.graph.degree(v), 2); });
  auto stage2 = bernardi_weighted_solve(host_graph, f, i, lists, rep.sublists, r);
  rep.stage2_switches = stage2.switches;

  out.coloring = std::move(stage2.coloring);
  detail::run_stage3(p, out.coloring, rep);
  detail::classify(p, out.coloring, rep);
  return out;
}

}  // namespace majority
