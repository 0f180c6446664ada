#pragma once

// Ground-truth checkers for (list) majority colourings of graphs and
// digraphs, the weighted per-vertex guarantee, and brute-force oracles.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "rational.hpp"

namespace majority {

struct GoodBad {
  int good = 0;
  int bad = 0;

  friend bool operator==(const GoodBad&, const GoodBad&) = default;
};

// Counts over incident edges of v. Every neighbour and v itself must be
// coloured.
inline GoodBad good_bad_counts(const Graph& g, const Coloring& c, Vertex v) {
  const Color cv = c.at(v);
  GoodBad gb;
  for (Vertex u : g.neighbors(v)) (c.at(u) == cv ? gb.bad : gb.good)++;
  return gb;
}

// Directed: out-going arcs only.
inline GoodBad good_bad_counts(const Digraph& d, const Coloring& c, Vertex v) {
  const Color cv = c.at(v);
  GoodBad gb;
  for (Vertex u : d.out_neighbors(v)) (c.at(u) == cv ? gb.bad : gb.good)++;
  return gb;
}

struct VertexReport {
  Vertex vertex = 0;
  int good = 0;
  int bad = 0;
  bool satisfied = false;
};

struct MajorityReport {
  bool majority = true;
  std::vector<VertexReport> failures;

  explicit operator bool() const noexcept { return majority; }
};

// One row per vertex. Undirected and directed majority both reduce to
// 2*bad <= degree (out-degree when directed).
template <class G>
std::vector<VertexReport> vertex_reports(const G& g, const Coloring& c) {
  std::vector<VertexReport> rows;
  rows.reserve(static_cast<std::size_t>(g.size()));
  for (Vertex v = 0; v < g.size(); ++v) {
    const auto gb = good_bad_counts(g, c, v);
    rows.push_back({v, gb.good, gb.bad, 2 * gb.bad <= gb.good + gb.bad});
  }
  return rows;
}

namespace detail {

template <class G>
MajorityReport majority_report(const G& g, const Coloring& c) {
  if (c.size() != g.size()) throw ValidationError("coloring size does not match graph");
  MajorityReport rep;
  for (const auto& row : vertex_reports(g, c))
    if (!row.satisfied) {
      rep.majority = false;
      rep.failures.push_back(row);
    }
  return rep;
}

}  // namespace detail

inline MajorityReport is_majority(const Graph& g, const Coloring& c) {
  return detail::majority_report(g, c);
}

inline MajorityReport is_majority_digraph(const Digraph& d, const Coloring& c) {
  return detail::majority_report(d, c);
}

inline std::size_t total_bad_edges(const Graph& g, const Coloring& c) {
  std::size_t bad = 0;
  for (auto [u, v] : g.edges())
    if (c.at(u) == c.at(v)) ++bad;
  return bad;
}

// ---------------------------------------------------------------------------
// Weighted guarantee: c colours F, every u in I will later take a colour
// from its 2-list L'(u). For v in F, with
//   nF(x) = #F-neighbours of v coloured x,
//   m(x)  = #I-neighbours u of v with x in L'(u),
// the bad count at v is at most r_v(c(v)) for every future colouring of I
// iff nF(c(v)) + m(c(v)) <= r_v(c(v)): the worst case colours every eligible
// I-neighbour with c(v), and those choices are independent.
// The directed variant counts out-neighbours only.

struct WeightedFailure {
  Vertex vertex = 0;
  Color color = 0;
  int load = 0;
  Rational bound;
};

struct WeightedReport {
  bool ok = true;
  std::vector<WeightedFailure> failures;

  explicit operator bool() const noexcept { return ok; }
};

namespace detail {

inline std::span<const Vertex> forward(const Graph& g, Vertex v) { return g.neighbors(v); }
inline std::span<const Vertex> forward(const Digraph& d, Vertex v) { return d.out_neighbors(v); }

struct Split {
  std::vector<char> in_f;
  std::vector<char> in_i;
};

template <class G>
Split check_split(const G& g, std::span<const Vertex> f, std::span<const Vertex> i) {
  Split s{membership(g.size(), f), membership(g.size(), i)};
  for (Vertex v : f)
    if (s.in_i[v]) throw ValidationError("vertex " + std::to_string(v) + " is in both F and I");
  for (Vertex u : i)
    for (Vertex w : forward(g, u))
      if (s.in_i[w])
        throw ValidationError("I is not independent: " + std::to_string(u) + " ~ " +
                              std::to_string(w));
  return s;
}

template <class G>
int guarantee_load(const G& g, const Split& s, const Coloring& c, const ListAssignment& lists_i,
                   Vertex v, Color x) {
  int load = 0;
  for (Vertex u : forward(g, v)) {
    if (s.in_f[u]) load += c.at(u) == x;
    else if (s.in_i[u]) load += lists_i.contains(u, x);
  }
  return load;
}

template <class G>
WeightedReport weighted_guarantee(const G& g, std::span<const Vertex> f,
                                  std::span<const Vertex> i, const Coloring& c,
                                  const ListAssignment& lists_i, const WeightMap& r) {
  const auto s = check_split(g, f, i);
  WeightedReport rep;
  for (Vertex v : f) {
    const Color x = c.at(v);
    const int load = guarantee_load(g, s, c, lists_i, v, x);
    const Rational bound = r.at(v, x);
    if (Rational(load) > bound) {
      rep.ok = false;
      rep.failures.push_back({v, x, load, bound});
    }
  }
  return rep;
}

}  // namespace detail

inline WeightedReport check_weighted_guarantee(const Graph& g, std::span<const Vertex> f,
                                               std::span<const Vertex> i, const Coloring& c,
                                               const ListAssignment& lists_i,
                                               const WeightMap& r) {
  return detail::weighted_guarantee(g, f, i, c, lists_i, r);
}

inline WeightedReport check_weighted_guarantee(const Digraph& d, std::span<const Vertex> f,
                                               std::span<const Vertex> i, const Coloring& c,
                                               const ListAssignment& lists_i,
                                               const WeightMap& r) {
  return detail::weighted_guarantee(d, f, i, c, lists_i, r);
}

struct ExhaustiveOutcome {
  std::uint64_t colorings = 0;
  std::uint64_t violations = 0;  // (c', v) pairs with bad(v) > r_v(c(v))
};

// Enumerates every colouring c' of I from L' and counts the vertices of F
// whose actual bad count exceeds r_v(c(v)). Refuses past `limit` colourings.
template <class G>
ExhaustiveOutcome exhaustive_guarantee_check(const G& g, std::span<const Vertex> f,
                                             std::span<const Vertex> i, const Coloring& c,
                                             const ListAssignment& lists_i, const WeightMap& r,
                                             std::uint64_t limit = 1u << 20) {
  const auto s = detail::check_split(g, f, i);
  std::uint64_t total = 1;
  for (Vertex u : i) {
    if (!lists_i.has(u)) throw ValidationError("I-vertex " + std::to_string(u) + " has no list");
    total *= lists_i[u].size();
    if (total > limit) throw BudgetExceeded("exhaustive c' enumeration exceeds limit");
  }
  std::vector<int> pos_in_i(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t k = 0; k < i.size(); ++k) pos_in_i[i[k]] = static_cast<int>(k);

  struct Row {
    Color color;
    int from_f;
    std::vector<int> i_nbrs;  // positions in i
    Rational bound;
  };
  std::vector<Row> rows;
  for (Vertex v : f) {
    Row row{c.at(v), 0, {}, {}};
    row.bound = r.at(v, row.color);
    for (Vertex u : detail::forward(g, v)) {
      if (s.in_f[u]) row.from_f += c.at(u) == row.color;
      else if (s.in_i[u]) row.i_nbrs.push_back(pos_in_i[u]);
    }
    rows.push_back(std::move(row));
  }

  ExhaustiveOutcome out;
  std::vector<std::size_t> digit(i.size(), 0);
  std::vector<Color> cprime(i.size());
  for (std::size_t k = 0; k < i.size(); ++k) cprime[k] = lists_i[i[k]][0];
  while (true) {
    ++out.colorings;
    for (const auto& row : rows) {
      int bad = row.from_f;
      for (int k : row.i_nbrs) bad += cprime[k] == row.color;
      if (Rational(bad) > row.bound) ++out.violations;
    }
    std::size_t k = 0;
    for (; k < i.size(); ++k) {
      const auto list = lists_i[i[k]];
      if (++digit[k] < list.size()) {
        cprime[k] = list[digit[k]];
        break;
      }
      digit[k] = 0;
      cprime[k] = list[0];
    }
    if (k == i.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracles.

struct OracleOptions {
  std::uint64_t budget = 10'000'000;
  unsigned jobs = 1;
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// Depth-first search over colourings in lexicographic order of list
// positions (vertex 0 most significant). A vertex's majority condition is
// checked as soon as it and all its (out-)neighbours are coloured.
template <class G>
class MajoritySearch {
public:
  MajoritySearch(const G& g, const ListAssignment& lists) : g_(g), lists_(lists) {
    const int n = g.size();
    ready_at_.resize(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      Vertex last = v;
      for (Vertex u : forward(g, v)) last = std::max(last, u);
      ready_at_[last].push_back(v);
    }
  }

  // First majority colouring whose leading vertices use the given list
  // positions.
  std::optional<Coloring> first_with_prefix(std::span<const std::size_t> prefix) const {
    Coloring c(g_.size());
    for (std::size_t k = 0; k < prefix.size(); ++k) {
      c.set(static_cast<Vertex>(k), lists_[static_cast<Vertex>(k)][prefix[k]]);
      if (!ready_ok(c, static_cast<Vertex>(k))) return std::nullopt;
    }
    if (descend(c, static_cast<Vertex>(prefix.size()))) return c;
    return std::nullopt;
  }

private:
  bool ready_ok(const Coloring& c, Vertex k) const {
    for (Vertex w : ready_at_[k]) {
      int bad = 0;
      const auto nb = forward(g_, w);
      for (Vertex u : nb) bad += c[u] == c[w];
      if (2 * bad > static_cast<int>(nb.size())) return false;
    }
    return true;
  }

  bool descend(Coloring& c, Vertex k) const {
    if (k == g_.size()) return true;
    for (Color x : lists_[k]) {
      c.set(k, x);
      if (ready_ok(c, k) && descend(c, k + 1)) return true;
    }
    c.clear(k);
    return false;
  }

  const G& g_;
  const ListAssignment& lists_;
  std::vector<std::vector<Vertex>> ready_at_;
};

template <class G>
std::optional<Coloring> exists_majority(const G& g, const ListAssignment& lists,
                                        const OracleOptions& opt) {
  const int n = g.size();
  if (lists.size() != n) throw ValidationError("list assignment size does not match graph");
  std::uint64_t space = 1;
  for (Vertex v = 0; v < n; ++v) {
    if (!lists.has(v)) throw ValidationError("vertex " + std::to_string(v) + " has no list");
    space = saturating_mul(space, lists[v].size());
  }
  if (space > opt.budget)
    throw BudgetExceeded("coloring space " + std::to_string(space) + " exceeds budget " +
                         std::to_string(opt.budget));
  MajoritySearch<G> search(g, lists);
  if (n == 0) return Coloring(0);

  // Split on the first few vertices so the jobs get separate subtrees; the
  // earliest subtree with a solution wins, as in a sequential search.
  std::size_t depth = 0;
  std::uint64_t prefixes = 1;
  const std::uint64_t want = opt.jobs > 1 ? 8ull * opt.jobs : 1;
  while (depth < static_cast<std::size_t>(n) && prefixes < want) {
    prefixes *= lists[static_cast<Vertex>(depth)].size();
    ++depth;
  }
  std::vector<std::optional<Coloring>> found(prefixes);
  std::atomic<std::uint64_t> best{prefixes};
  parallel_for(prefixes, opt.jobs, [&](std::size_t p) {
    if (p > best.load()) return;
    std::vector<std::size_t> digits(depth);
    std::uint64_t rest = p;
    for (std::size_t k = depth; k-- > 0;) {
      const auto base = lists[static_cast<Vertex>(k)].size();
      digits[k] = rest % base;
      rest /= base;
    }
    found[p] = search.first_with_prefix(digits);
    if (found[p]) {
      auto cur = best.load();
      while (p < cur && !best.compare_exchange_weak(cur, p)) {
      }
    }
  });
  for (auto& f : found)
    if (f) return std::move(f);
  return std::nullopt;
}

}  // namespace detail

// First majority colouring from the lists in lexicographic order of list
// positions, or nullopt when none exists. Throws BudgetExceeded when the
// product of list sizes exceeds the budget.
inline std::optional<Coloring> oracle_exists_majority_coloring(const Graph& g,
                                                               const ListAssignment& lists,
                                                               const OracleOptions& opt = {}) {
  return detail::exists_majority(g, lists, opt);
}

inline std::optional<Coloring> oracle_exists_majority_coloring(const Digraph& d,
                                                               const ListAssignment& lists,
                                                               const OracleOptions& opt = {}) {
  return detail::exists_majority(d, lists, opt);
}

struct ChoosabilityResult {
  bool choosable = true;
  std::optional<ListAssignment> witness;  // a list assignment with no majority colouring
  std::uint64_t assignments_checked = 0;
};

namespace detail {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

// Enumerates list assignments of k-subsets of {0..universe-1}, one
// representative (at least) per orbit under colour permutations: colours
// first appear in increasing order along the vertex order.
class CanonicalLists {
public:
  CanonicalLists(int n, int k, int universe) : n_(n), k_(k), universe_(universe) {}

  template <class Sink>
  void run(Sink&& sink) const {
    std::vector<std::vector<Color>> cur(static_cast<std::size_t>(n_));
    bool stop = false;
    step(0, 0, cur, sink, stop);
  }

private:
  template <class Sink>
  void step(int v, int introduced, std::vector<std::vector<Color>>& cur, Sink& sink,
            bool& stop) const {
    if (stop) return;
    if (v == n_) {
      if (!sink(cur)) stop = true;
      return;
    }
    for (int fresh = 0; fresh <= std::min(k_, universe_ - introduced) && !stop; ++fresh) {
      const int old = k_ - fresh;
      if (old > introduced) continue;
      std::vector<int> pick(static_cast<std::size_t>(old));
      for (int j = 0; j < old; ++j) pick[j] = j;
      while (!stop) {
        auto& list = cur[v];
        list.clear();
        for (int j : pick) list.push_back(j);
        for (int j = 0; j < fresh; ++j) list.push_back(introduced + j);
        step(v + 1, introduced + fresh, cur, sink, stop);
        int j = old - 1;
        while (j >= 0 && pick[j] == introduced - old + j) --j;
        if (j < 0) break;
        ++pick[j];
        for (int t = j + 1; t < old; ++t) pick[t] = pick[t - 1] + 1;
      }
    }
  }

  int n_;
  int k_;
  int universe_;
};

template <class G>
ChoosabilityResult choosability(const G& g, int k, int universe, const OracleOptions& opt) {
  if (k < 1) throw ValidationError("list size k must be positive");
  if (universe < k) throw ValidationError("color universe must be at least k");
  const int n = g.size();
  std::uint64_t bound = 1;
  std::uint64_t per = 1;
  for (int v = 0; v < n; ++v) {
    bound = saturating_mul(bound, binomial(universe, k));
    per = saturating_mul(per, static_cast<std::uint64_t>(k));
  }
  if (bound > opt.budget || per > opt.budget)
    throw BudgetExceeded("list-assignment enumeration exceeds budget " +
                         std::to_string(opt.budget));

  ChoosabilityResult res;
  constexpr std::size_t kBatch = 2048;
  std::vector<std::vector<std::vector<Color>>> batch;
  auto flush = [&]() {
    std::vector<char> bad(batch.size(), 0);
    OracleOptions inner{opt.budget, 1};
    parallel_for(batch.size(), opt.jobs, [&](std::size_t b) {
      ListAssignment la(n);
      for (Vertex v = 0; v < n; ++v) la.set(v, batch[b][v]);
      bad[b] = !exists_majority(g, la, inner).has_value();
    });
    for (std::size_t b = 0; b < batch.size(); ++b) {
      ++res.assignments_checked;
      if (bad[b]) {
        ListAssignment la(n);
        for (Vertex v = 0; v < n; ++v) la.set(v, batch[b][v]);
        res.choosable = false;
        res.witness = std::move(la);
        break;
      }
    }
    batch.clear();
    return res.choosable;
  };
  CanonicalLists(n, k, universe).run([&](const std::vector<std::vector<Color>>& lists) {
    batch.push_back(lists);
    return batch.size() < kBatch || flush();
  });
  if (res.choosable && !batch.empty()) flush();
  return res;
}

}  // namespace detail

// Sound refuter, heuristic confirmer: `false` comes with a genuine
// counterexample; `true` only covers lists drawn from the bounded universe.
inline ChoosabilityResult oracle_choosability(const Graph& g, int k, int universe,
                                              const OracleOptions& opt = {}) {
  return detail::choosability(g, k, universe, opt);
}

inline ChoosabilityResult oracle_choosability(const Digraph& d, int k, int universe,
                                              const OracleOptions& opt = {}) {
  return detail::choosability(d, k, universe, opt);
}

// The colour x with #(elements != x) <= threshold, if any. When several
// qualify (only possible for at most 2*threshold elements) the most
// frequent wins, then the smaller colour.
inline std::optional<Color> amc_dominant(std::span<const Color> colors, std::size_t threshold) {
  if (colors.empty()) return std::nullopt;
  std::map<Color, std::size_t> freq;
  for (Color x : colors) ++freq[x];
  std::optional<Color> best;
  std::size_t best_count = 0;
  for (const auto& [x, count] : freq)
    if (colors.size() - count <= threshold && count > best_count) {
      best = x;
      best_count = count;
    }
  return best;
}

}  // namespace majority
