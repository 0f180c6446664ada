#pragma once

// Pieces shared by the undirected and directed three-stage pipelines.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "backforth.hpp"
#include "graph.hpp"
#include "verify.hpp"

namespace majority {

enum class VertexStatus {
  exact_satisfied,        // complete finite-degree vertex passing the majority check
  exact_violated,
  certificate_satisfied,  // class A via Stage-1 history, class B via the Stage-3 rule
  certificate_violated,
  deferred,               // finite degree, neighbourhood not complete in the prefix
};

inline std::string_view to_string(VertexStatus s) {
  switch (s) {
    case VertexStatus::exact_satisfied: return "exact-satisfied";
    case VertexStatus::exact_violated: return "exact-violated";
    case VertexStatus::certificate_satisfied: return "certificate-satisfied";
    case VertexStatus::certificate_violated: return "certificate-violated";
    case VertexStatus::deferred: return "deferred";
  }
  return "?";
}

struct Stage3Decision {
  Vertex vertex = 0;
  Subclass subclass = Subclass::A;
  std::optional<Color> dominant;  // class B only
  Color chosen = 0;
  bool opposite = false;  // took the other sublist colour to avoid `dominant`
};

struct StageReport {
  // Stage 1
  SelectionState selection;
  std::vector<Vertex> family_owner;  // class-A vertex owning each family set
  ListAssignment sublists;           // L'(u) on every I-vertex
  // Stage 2
  std::size_t stage2_switches = 0;
  // Stage 3
  std::vector<Stage3Decision> stage3;
  std::size_t amc_threshold = 3;

  std::vector<VertexStatus> status;

  std::size_t count(VertexStatus s) const {
    std::size_t k = 0;
    for (auto x : status) k += x == s;
    return k;
  }

  bool has_violation() const {
    return count(VertexStatus::exact_violated) + count(VertexStatus::certificate_violated) > 0;
  }
};

struct PipelineResult {
  Coloring coloring;
  StageReport report;
};

namespace detail {

// Stage 1: sublists for all of I. Family sets are N[u] ∩ I (closed, out-
// neighbourhood when directed) for u in A, in ascending order of u.
template <class G>
void run_stage1(const Prefix<G>& p, const ListAssignment& lists, StageReport& rep) {
  const int n = p.size();
  const auto in_i = [&](Vertex v) { return p.meta[v].infinite(); };
  std::vector<std::vector<Vertex>> family;
  for (Vertex u = 0; u < n; ++u) {
    if (p.meta[u].subclass != Subclass::A) continue;
    std::vector<Vertex> set{u};
    for (Vertex w : forward(p.graph, u))
      if (in_i(w)) set.push_back(w);
    family.push_back(std::move(set));
    rep.family_owner.push_back(u);
  }
  BackForth bf(std::move(family), lists);
  bf.run_until_exhausted();
  rep.selection = std::move(bf).take();
  rep.sublists = ListAssignment(n);
  for (Vertex u = 0; u < n; ++u) {
    if (!in_i(u)) continue;
    const auto& chosen = rep.selection.assigned[u];
    const ColorPair pair = chosen ? *chosen : choose_pair(lists[u], std::nullopt, std::nullopt);
    rep.sublists.set(u, {pair[0], pair[1]});
  }
}

// Stage 3: colour I from the sublists. Class A takes the first sublist
// colour; class B avoids a dominant colour among its F-(out-)neighbours when
// that colour is in its sublist.
template <class G>
void run_stage3(const Prefix<G>& p, Coloring& c, StageReport& rep) {
  for (Vertex u = 0; u < p.size(); ++u) {
    if (!p.meta[u].infinite()) continue;
    const auto sub = rep.sublists[u];
    Stage3Decision d;
    d.vertex = u;
    d.subclass = *p.meta[u].subclass;
    d.chosen = sub[0];
    if (d.subclass == Subclass::B) {
      std::vector<Color> seen;
      for (Vertex w : forward(p.graph, u))
        if (!p.meta[w].infinite()) seen.push_back(c.at(w));
      d.dominant = amc_dominant(seen, rep.amc_threshold);
      if (d.dominant && *d.dominant == sub[0]) {
        d.chosen = sub[1];
        d.opposite = true;
      }
    }
    c.set(u, d.chosen);
    rep.stage3.push_back(d);
  }
}

template <class G>
void classify(const Prefix<G>& p, const Coloring& c, StageReport& rep) {
  const int n = p.size();
  rep.status.assign(static_cast<std::size_t>(n), VertexStatus::deferred);
  for (Vertex v = 0; v < n; ++v) {
    const auto& m = p.meta[v];
    if (!m.infinite()) {
      if (!m.complete) continue;
      const auto gb = good_bad_counts(p.graph, c, v);
      rep.status[v] = 2 * gb.bad <= gb.good + gb.bad ? VertexStatus::exact_satisfied
                                                     : VertexStatus::exact_violated;
    }
  }
  for (std::size_t s = 0; s < rep.family_owner.size(); ++s) {
    bool ok = true;
    const auto& h = rep.selection.history[s];
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (k >= 1 && h[k].pair == h[k - 1].pair) ok = false;
      if (k >= 2 && !detail::triple_disjoint(h[k].pair, h[k - 1].pair, h[k - 2].pair)) ok = false;
    }
    rep.status[rep.family_owner[s]] =
        ok ? VertexStatus::certificate_satisfied : VertexStatus::certificate_violated;
  }
  for (const auto& d : rep.stage3) {
    if (d.subclass != Subclass::B) continue;
    const bool ok = !d.dominant || c[d.vertex] != *d.dominant;
    rep.status[d.vertex] = ok ? VertexStatus::certificate_satisfied
                              : VertexStatus::certificate_violated;
  }
}

}  // namespace detail

}  // namespace majority
