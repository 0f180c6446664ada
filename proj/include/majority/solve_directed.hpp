#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <random>
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
// Greedy colouring of a finite acyclic digraph from 2-lists.

// Vertices ordered so that every out-neighbour precedes its tail: repeatedly
// take the smallest id whose remaining out-degree is zero. Throws CycleError
// with a witness cycle if the digraph is not acyclic.
inline std::vector<Vertex> sinks_first_order(const Digraph& d) {
  const int n = d.size();
  std::vector<int> remaining(static_cast<std::size_t>(n));
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < n; ++v) {
    remaining[v] = d.out_degree(v);
    if (remaining[v] == 0) ready.push(v);
  }
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!ready.empty()) {
    const Vertex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (Vertex w : d.in_neighbors(v))
      if (--remaining[w] == 0) ready.push(w);
  }
  if (static_cast<int>(order.size()) == n) return order;

  // Every unprocessed vertex keeps an unprocessed out-neighbour, so walking
  // those arcs must revisit a vertex.
  std::vector<int> seen_at(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> walk;
  Vertex v = 0;
  while (remaining[v] == 0) ++v;
  while (seen_at[v] < 0) {
    seen_at[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    for (Vertex u : d.out_neighbors(v))
      if (remaining[u] > 0) {
        v = u;
        break;
      }
  }
  throw CycleError(std::vector<Vertex>(walk.begin() + seen_at[v], walk.end()));
}

// Colours each vertex, sinks first, with the list colour that appears no
// more often than the other on its already-coloured out-neighbours (ties to
// the first list colour). Then 2*bad_out(v) <= deg+(v) everywhere.
inline Coloring greedy_acyclic_solve(const Digraph& d, const ListAssignment& lists) {
  const int n = d.size();
  if (lists.size() != n) throw ValidationError("list assignment size does not match digraph");
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  lists.require_size(all, 2, "");
  Coloring c(n);
  for (Vertex v : sinks_first_order(d)) {
    const Color a = lists[v][0];
    const Color b = lists[v][1];
    int on_a = 0, on_b = 0;
    for (Vertex u : d.out_neighbors(v)) {
      on_a += c.at(u) == a;
      on_b += c.at(u) == b;
    }
    c.set(v, on_a <= on_b ? a : b);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Weighted colouring of a finite digraph from 4-lists:
// bad_out(v) <= r_v(c(v)) for all v, given sum_x r_v(x) >= 2 deg+(v).

enum class BaseCaseMode { automatic, heuristic, exhaustive };

struct BaseCaseOptions {
  BaseCaseMode mode = BaseCaseMode::automatic;
  std::size_t restart_budget = 64;
  std::uint64_t seed = 0;
  int exhaustive_limit = 12;  // largest n searched exhaustively
};

struct BaseCaseResult {
  Coloring coloring;
  BaseCaseMode used = BaseCaseMode::heuristic;
  std::size_t restarts = 0;
  // Deficiency Psi along the successful local-search run (empty when the
  // exhaustive search produced the colouring).
  std::vector<Rational> psi_trace;
};

// Psi(c) = sum_v max(0, bad_out(v) - r_v(c(v))).
inline Rational deficiency(const Digraph& d, const Coloring& c, const WeightMap& r) {
  Rational psi;
  for (Vertex v = 0; v < d.size(); ++v) {
    const Rational over = Rational(good_bad_counts(d, c, v).bad) - r.at(v, c.at(v));
    if (over > Rational(0)) psi += over;
  }
  return psi;
}

namespace detail {

inline void check_base_case(const Digraph& d, const ListAssignment& lists, const WeightMap& r) {
  const int n = d.size();
  if (lists.size() != n) throw ValidationError("list assignment size does not match digraph");
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  lists.require_size(all, 4, "");
  r.require_domain(lists, all);
  for (Vertex v = 0; v < n; ++v)
    if (r.list_sum(v, lists) < Rational(2 * d.out_degree(v)))
      throw InfeasibleError(v, "vertex " + std::to_string(v) + ": sum of weights " +
                                   r.list_sum(v, lists).to_string() + " is below 2*deg+ = " +
                                   std::to_string(2 * d.out_degree(v)));
}

class DeficiencySearch {
public:
  DeficiencySearch(const Digraph& d, const ListAssignment& lists, const WeightMap& r)
      : d_(d), slot_(static_cast<std::size_t>(d.size())) {
    for (Vertex v = 0; v < d.size(); ++v)
      for (int k = 0; k < 4; ++k) {
        slot_[v].colors[k] = lists[v][k];
        slot_[v].r[k] = r.at(v, lists[v][k]);
      }
  }

  // Steepest descent from `start` (list positions). Returns Psi along the
  // run; the final colouring is in coloring().
  std::vector<Rational> descend(const std::vector<int>& start) {
    const int n = d_.size();
    for (Vertex v = 0; v < n; ++v) slot_[v].cur = start[v];
    for (Vertex v = 0; v < n; ++v) {
      slot_[v].cnt.fill(0);
      for (Vertex u : d_.out_neighbors(v))
        if (const int k = slot_[v].index_of(color(u)); k >= 0) ++slot_[v].cnt[k];
    }
    Rational psi;
    for (Vertex v = 0; v < n; ++v) psi += over(slot_[v].cnt[slot_[v].cur], slot_[v].r[slot_[v].cur]);
    std::vector<Rational> trace{psi};
    while (psi > Rational(0)) {
      std::optional<std::pair<Vertex, int>> best;
      Rational best_delta;
      for (Vertex v = 0; v < n; ++v)
        for (int k = 0; k < 4; ++k) {
          if (k == slot_[v].cur) continue;
          const Rational delta = move_delta(v, k);
          if (delta < Rational(0) && (!best || delta < best_delta)) {
            best = {v, k};
            best_delta = delta;
          }
        }
      if (!best) break;
      apply(best->first, best->second);
      psi += best_delta;
      trace.push_back(psi);
    }
    return trace;
  }

  Coloring coloring() const {
    Coloring c(d_.size());
    for (Vertex v = 0; v < d_.size(); ++v) c.set(v, color(v));
    return c;
  }

private:
  struct Slot {
    std::array<Color, 4> colors{};
    std::array<Rational, 4> r{};
    std::array<int, 4> cnt{};  // out-neighbours coloured colors[k]
    int cur = 0;

    int index_of(Color x) const {
      for (int k = 0; k < 4; ++k)
        if (colors[k] == x) return k;
      return -1;
    }
  };

  static Rational over(int bad, const Rational& bound) {
    const Rational x = Rational(bad) - bound;
    return x > Rational(0) ? x : Rational(0);
  }

  Color color(Vertex v) const { return slot_[v].colors[slot_[v].cur]; }

  Rational move_delta(Vertex v, int k) const {
    const auto& s = slot_[v];
    const Color from = s.colors[s.cur];
    const Color to = s.colors[k];
    Rational delta = over(s.cnt[k], s.r[k]) - over(s.cnt[s.cur], s.r[s.cur]);
    for (Vertex w : d_.in_neighbors(v)) {
      const auto& t = slot_[w];
      const Color cw = t.colors[t.cur];
      if (cw != from && cw != to) continue;
      const int bad = t.cnt[t.cur];
      const int after = cw == from ? bad - 1 : bad + 1;
      delta += over(after, t.r[t.cur]) - over(bad, t.r[t.cur]);
    }
    return delta;
  }

  void apply(Vertex v, int k) {
    const Color from = color(v);
    const Color to = slot_[v].colors[k];
    slot_[v].cur = k;
    for (Vertex w : d_.in_neighbors(v)) {
      auto& t = slot_[w];
      if (const int j = t.index_of(from); j >= 0) --t.cnt[j];
      if (const int j = t.index_of(to); j >= 0) ++t.cnt[j];
    }
  }

  const Digraph& d_;
  std::vector<Slot> slot_;
};

// First feasible colouring in lexicographic order of list positions.
inline std::optional<Coloring> exhaustive_base_case(const Digraph& d, const ListAssignment& lists,
                                                    const WeightMap& r) {
  const int n = d.size();
  std::vector<std::vector<Vertex>> ready_at(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    Vertex last = v;
    for (Vertex u : d.out_neighbors(v)) last = std::max(last, u);
    ready_at[last].push_back(v);
  }
  Coloring c(n);
  std::function<bool(Vertex)> go = [&](Vertex k) {
    if (k == n) return true;
    for (Color x : lists[k]) {
      c.set(k, x);
      bool ok = true;
      for (Vertex w : ready_at[k]) {
        int bad = 0;
        for (Vertex u : d.out_neighbors(w)) bad += c[u] == c[w];
        if (Rational(bad) > r.at(w, c[w])) {
          ok = false;
          break;
        }
      }
      if (ok && go(k + 1)) return true;
    }
    c.clear(k);
    return false;
  };
  if (go(0)) return c;
  return std::nullopt;
}

}  // namespace detail

// Local search on Psi with steepest single-vertex switches, restarting from
// seeded random colourings; falls back to exhaustive search on small
// digraphs. Never returns a colouring that misses its bounds: when neither
// route succeeds it throws BudgetExceeded.
inline BaseCaseResult base_case_solve(const Digraph& d, const ListAssignment& lists,
                                      const WeightMap& r, const BaseCaseOptions& opt = {}) {
  detail::check_base_case(d, lists, r);
  const int n = d.size();
  BaseCaseResult res;

  if (opt.mode != BaseCaseMode::exhaustive) {
    detail::DeficiencySearch search(d, lists, r);
    std::vector<int> start(static_cast<std::size_t>(n), 0);
    std::mt19937_64 rng(opt.seed);
    for (std::size_t attempt = 0; attempt <= opt.restart_budget; ++attempt) {
      if (attempt > 0) {
        std::uniform_int_distribution<int> pick(0, 3);
        for (auto& s : start) s = pick(rng);
      }
      auto trace = search.descend(start);
      if (trace.back() == Rational(0)) {
        res.coloring = search.coloring();
        res.used = BaseCaseMode::heuristic;
        res.restarts = attempt;
        res.psi_trace = std::move(trace);
        return res;
      }
    }
    if (opt.mode == BaseCaseMode::heuristic)
      throw BudgetExceeded("local search found no coloring within " +
                           std::to_string(opt.restart_budget) + " restarts");
  }
  if (n > opt.exhaustive_limit)
    throw BudgetExceeded("digraph has " + std::to_string(n) +
                         " vertices, above the exhaustive limit " +
                         std::to_string(opt.exhaustive_limit));
  auto found = detail::exhaustive_base_case(d, lists, r);
  if (!found) throw InfeasibleError(-1, "no coloring meets the weight bounds");
  res.coloring = std::move(*found);
  res.used = BaseCaseMode::exhaustive;
  res.restarts = opt.mode == BaseCaseMode::exhaustive ? 0 : opt.restart_budget;
  return res;
}

// ---------------------------------------------------------------------------
// Peeling: remove I-vertices one by one, charging both colours of L'(u) to
// every in-neighbour of u, then solve the remaining digraph on F.

struct PeelStep {
  Vertex removed = 0;
  std::vector<Vertex> decremented;  // in-neighbours of `removed` at removal time
  // New weights r'_v of the decremented vertices, in `decremented` order.
  std::vector<std::vector<std::pair<Color, Rational>>> updated;
  // min over v in F of sum_x r'_v(x) - 2 deg+_{D'}(v) after this peel.
  Rational min_slack;
};

struct PeelTrace {
  std::vector<PeelStep> steps;

  // r' after the first `count` peels, replayed from the initial weights.
  WeightMap weights_after(std::size_t count, WeightMap initial) const {
    for (std::size_t s = 0; s < count && s < steps.size(); ++s)
      for (std::size_t k = 0; k < steps[s].decremented.size(); ++k)
        for (const auto& [x, w] : steps[s].updated[k]) initial.set(steps[s].decremented[k], x, w);
    return initial;
  }
};

struct PeelResult {
  Coloring coloring;  // on F
  PeelTrace trace;
  BaseCaseResult base;
};

inline PeelResult peel_and_solve(const Digraph& d, std::span<const Vertex> f,
                                 std::span<const Vertex> i, const ListAssignment& lists,
                                 const ListAssignment& lists_i, const WeightMap& r,
                                 const BaseCaseOptions& opt = {}) {
  const int n = d.size();
  const auto s = detail::check_split(d, f, i);
  for (Vertex v = 0; v < n; ++v)
    if (!s.in_f[v] && !s.in_i[v])
      throw ValidationError("vertex " + std::to_string(v) + " is in neither F nor I");
  lists.require_size(f, 4, "F");
  lists_i.require_size(i, 2, "I");
  r.require_domain(lists, f);
  for (Vertex v : f)
    if (r.list_sum(v, lists) < Rational(2 * d.out_degree(v)))
      throw InfeasibleError(v, "vertex " + std::to_string(v) + ": sum of weights " +
                                   r.list_sum(v, lists).to_string() + " is below 2*deg+ = " +
                                   std::to_string(2 * d.out_degree(v)));

  PeelResult res;
  WeightMap cur = r;
  std::vector<int> out_deg(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) out_deg[v] = d.out_degree(v);
  std::vector<char> alive(static_cast<std::size_t>(n), 1);

  std::vector<Vertex> peel_order(i.begin(), i.end());
  std::sort(peel_order.rbegin(), peel_order.rend());
  for (Vertex u : peel_order) {
    PeelStep step;
    step.removed = u;
    const auto pair = lists_i[u];
    for (Vertex v : d.in_neighbors(u)) {
      if (!alive[v]) continue;
      std::vector<std::pair<Color, Rational>> upd;
      for (Color x : pair)
        if (auto w = cur.find(v, x)) {
          cur.set(v, x, *w - Rational(1));
          upd.emplace_back(x, *w - Rational(1));
        }
      --out_deg[v];
      step.decremented.push_back(v);
      step.updated.push_back(std::move(upd));
    }
    alive[u] = 0;
    bool first = true;
    for (Vertex v : f) {
      const Rational slack = cur.list_sum(v, lists) - Rational(2 * out_deg[v]);
      if (first || slack < step.min_slack) step.min_slack = slack;
      first = false;
    }
    res.trace.steps.push_back(std::move(step));
  }

  const auto residual = induced_subgraph(d, f);
  const int m = residual.graph.size();
  ListAssignment local_lists(m);
  WeightMap local_r(m);
  for (Vertex k = 0; k < m; ++k) {
    const Vertex v = residual.to_original[k];
    local_lists.set(k, std::vector<Color>(lists[v].begin(), lists[v].end()));
    for (Color x : lists[v]) local_r.set(k, x, cur.at(v, x));
  }
  res.base = base_case_solve(residual.graph, local_lists, local_r, opt);
  res.coloring = Coloring(n);
  for (Vertex k = 0; k < m; ++k) res.coloring.set(residual.to_original[k], res.base.coloring[k]);
  return res;
}

// ---------------------------------------------------------------------------
// Directed three-stage colouring of a countable-digraph prefix. F / I split
// by out-degree; class A = infinitely many infinite-out-degree
// out-neighbours, B = the rest. Stage 1 runs over {N+[u] ∩ I : u in A},
// Stage 2 peels on F plus all F->I arcs with r_v(x) = deg+(v)/2, Stage 3
// applies the class-B rule to out-neighbours in F.

inline PipelineResult three_stage_solve_directed(const DirectedPrefix& p,
                                                 const ListAssignment& lists,
                                                 std::size_t amc_threshold = 3,
                                                 const BaseCaseOptions& opt = {}) {
  const int n = p.size();
  if (static_cast<int>(p.meta.size()) != n) throw ValidationError("missing metadata");
  validate_meta(p.meta);
  if (lists.size() != n) throw ValidationError("list assignment size does not match digraph");
  const auto f = p.finite_vertices();
  const auto i = p.infinite_vertices();
  lists.require_size(f, 4, "finite-out-degree");
  lists.require_size(i, 3, "infinite-out-degree");

  PipelineResult out;
  auto& rep = out.report;
  rep.amc_threshold = amc_threshold;
  detail::run_stage1(p, lists, rep);

  std::vector<Edge> host_arcs;
  for (Vertex v : f)
    for (Vertex u : p.graph.out_neighbors(v)) host_arcs.emplace_back(v, u);
  const Digraph host = Digraph::from_arcs(n, host_arcs);
  const auto r = WeightMap::constant_per_vertex(
      lists, f, [&](Vertex v) { return Rational(p.graph.out_degree(v), 2); });
  auto stage2 = peel_and_solve(host, f, i, lists, rep.sublists, r, opt);
  rep.stage2_switches = stage2.base.psi_trace.empty() ? 0 : stage2.base.psi_trace.size() - 1;

  out.coloring = std::move(stage2.coloring);
  detail::run_stage3(p, out.coloring, rep);
  detail::classify(p, out.coloring, rep);
  return out;
}

}  // namespace majority
