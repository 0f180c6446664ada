#pragma once

/*
 * Back-and-forth choice of 2-colour sublists from 3-colour lists over a
 * family of vertex sets N_1, ..., N_k.
 *
 * The visit schedule is S = B_1 B_2 B_3 ... with B_j = 1, 2, ..., j, so every
 * set is visited again and again. Step i enters N_{s_i}, takes its first
 * element (in id order) that has no sublist yet, and gives it a pair P with
 *   (1) P != Q, Q the pair chosen on the previous visit to this set;
 *   (2) P, Q and R (the visit before that) share no colour.
 * Condition (2) over the visit history means that in any colouring from the
 * chosen sublists a colour can take at most two of any three consecutively
 * visited elements.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace majority {

// s_i for i >= 1: with j minimal such that j(j+1)/2 >= i, s_i = i - j(j-1)/2.
inline std::uint64_t seq_s(std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("seq_s is indexed from 1");
  auto j = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(i) + 1.0) - 1.0) / 2.0);
  while (j * (j + 1) / 2 < i) ++j;
  while (j > 1 && (j - 1) * j / 2 >= i) --j;
  return i - j * (j - 1) / 2;
}

using ColorPair = std::array<Color, 2>;  // sorted ascending

inline bool shares(const ColorPair& p, Color x) { return p[0] == x || p[1] == x; }

struct Visit {
  std::uint64_t step = 0;
  Vertex vertex = 0;
  ColorPair pair{};
};

struct StarvedVisit {
  std::uint64_t step = 0;
  std::size_t set = 0;  // 0-based family position
};

struct SelectionState {
  std::vector<std::vector<Vertex>> sets;  // each sorted ascending
  std::vector<std::optional<ColorPair>> assigned;
  std::vector<std::vector<Visit>> history;  // per set, in visit order
  std::vector<std::size_t> visits;          // per set, including starved visits
  std::vector<StarvedVisit> starved;
  std::uint64_t steps = 0;

  // Sublists as a list assignment (vertices without a pair have no list).
  ListAssignment sublists() const {
    ListAssignment la(static_cast<int>(assigned.size()));
    for (std::size_t v = 0; v < assigned.size(); ++v)
      if (assigned[v]) la.set(static_cast<Vertex>(v), {(*assigned[v])[0], (*assigned[v])[1]});
    return la;
  }
};

namespace detail {

inline std::array<ColorPair, 3> sorted_pairs(std::span<const Color> list) {
  std::array<Color, 3> c{list[0], list[1], list[2]};
  std::sort(c.begin(), c.end());
  return {ColorPair{c[0], c[1]}, ColorPair{c[0], c[2]}, ColorPair{c[1], c[2]}};
}

inline bool triple_disjoint(const ColorPair& p, const ColorPair& q, const ColorPair& r) {
  for (Color x : p)
    if (shares(q, x) && shares(r, x)) return false;
  return true;
}

}  // namespace detail

// Lexicographically smallest pair of L(v) satisfying (1) and (2) against the
// set's last two pairs.
inline ColorPair choose_pair(std::span<const Color> list, const std::optional<ColorPair>& q,
                             const std::optional<ColorPair>& r) {
  for (const auto& p : detail::sorted_pairs(list)) {
    if (q && p == *q) continue;
    if (q && r && !detail::triple_disjoint(p, *q, *r)) continue;
    return p;
  }
  // Unreachable when Q != R, which the procedure maintains.
  throw std::logic_error("no admissible color pair");
}

// Incremental runner; `select_sublists` is the one-shot form.
class BackForth {
public:
  BackForth(std::vector<std::vector<Vertex>> sets, const ListAssignment& lists)
      : lists_(lists) {
    const int n = lists.size();
    state_.assigned.assign(static_cast<std::size_t>(n), std::nullopt);
    for (auto& s : sets) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      for (Vertex v : s) {
        detail::check_vertex(v, n, "set member");
        if (lists[v].size() != 3)
          throw ValidationError("vertex " + std::to_string(v) +
                                " needs a 3-color list for sublist selection, has " +
                                std::to_string(lists[v].size()));
      }
    }
    state_.sets = std::move(sets);
    state_.history.resize(state_.sets.size());
    state_.visits.assign(state_.sets.size(), 0);
    cursor_.assign(state_.sets.size(), 0);
    std::vector<char> member(static_cast<std::size_t>(n), 0);
    for (const auto& s : state_.sets)
      for (Vertex v : s) member[v] = 1;
    unassigned_in_sets_ = static_cast<std::size_t>(std::count(member.begin(), member.end(), 1));
  }

  // Executes the next step of the schedule.
  void step() {
    const std::uint64_t i = ++state_.steps;
    const std::uint64_t target = seq_s(i);
    if (target > state_.sets.size()) return;  // family index clamp
    const std::size_t set = target - 1;
    ++state_.visits[set];
    if (state_.visits[set] == 1) ++visited_sets_;
    const auto& members = state_.sets[set];
    auto& cur = cursor_[set];
    while (cur < members.size() && state_.assigned[members[cur]]) ++cur;
    if (cur == members.size()) {
      state_.starved.push_back({i, set});
      return;
    }
    const Vertex v = members[cur];
    const auto& hist = state_.history[set];
    std::optional<ColorPair> q, r;
    if (!hist.empty()) q = hist.back().pair;
    if (hist.size() >= 2) r = hist[hist.size() - 2].pair;
    const ColorPair p = choose_pair(lists_[v], q, r);
    state_.assigned[v] = p;
    state_.history[set].push_back({i, v, p});
    --unassigned_in_sets_;
  }

  void run(std::uint64_t steps) {
    for (std::uint64_t k = 0; k < steps; ++k) step();
  }

  // Runs until every member of every set holds a pair and every set has
  // been entered at least once.
  void run_until_exhausted() {
    while (unassigned_in_sets_ > 0 || visited_sets_ < state_.sets.size()) step();
  }

  const SelectionState& state() const noexcept { return state_; }
  SelectionState take() && { return std::move(state_); }

private:
  ListAssignment lists_;
  SelectionState state_;
  std::vector<std::size_t> cursor_;
  std::size_t unassigned_in_sets_ = 0;
  std::size_t visited_sets_ = 0;
};

// Executes steps 1..steps of the schedule.
inline SelectionState select_sublists(std::vector<std::vector<Vertex>> sets,
                                      const ListAssignment& lists, std::uint64_t steps) {
  BackForth bf(std::move(sets), lists);
  bf.run(steps);
  return std::move(bf).take();
}

struct HistoryViolation {
  std::size_t set = 0;
  std::size_t position = 0;  // index of the later pair in the history
  int condition = 0;         // 1: repeated pair, 2: common colour in a triple
};

// Direct scan of conditions (1) and (2) over every history, plus the
// sublist-inside-list invariant.
inline std::vector<HistoryViolation> scan_histories(const SelectionState& st,
                                                    const ListAssignment& lists) {
  std::vector<HistoryViolation> out;
  for (std::size_t s = 0; s < st.history.size(); ++s) {
    const auto& h = st.history[s];
    for (std::size_t k = 0; k < h.size(); ++k) {
      const auto& p = h[k].pair;
      if (p[0] >= p[1] || !lists.contains(h[k].vertex, p[0]) ||
          !lists.contains(h[k].vertex, p[1]))
        out.push_back({s, k, 0});
      if (k >= 1 && p == h[k - 1].pair) out.push_back({s, k, 1});
      if (k >= 2 && !detail::triple_disjoint(p, h[k - 1].pair, h[k - 2].pair))
        out.push_back({s, k, 2});
    }
  }
  return out;
}

struct NotAmcCertificate {
  std::size_t assigned = 0;     // k: elements assigned on visits to this set
  std::size_t uniform_bound = 0;  // 2 * ceil(k / 3)
  // Per colour occurring in the history: the number of history elements
  // that can carry it at once, from disjoint consecutive triples.
  std::map<Color, std::size_t> per_color;
};

// Upper bound on how many of the set's visited elements any one colour can
// take in a colouring from the sublists. Throws if the set was never entered.
inline NotAmcCertificate not_amc_certificate(const SelectionState& st, std::size_t set) {
  if (set >= st.sets.size()) throw std::out_of_range("no such set");
  if (st.visits[set] == 0)
    throw ValidationError("set " + std::to_string(set + 1) + " was never visited");
  const auto& h = st.history[set];
  NotAmcCertificate cert;
  cert.assigned = h.size();
  cert.uniform_bound = 2 * ((h.size() + 2) / 3);
  for (std::size_t start = 0; start < h.size(); start += 3) {
    const std::size_t end = std::min(start + 3, h.size());
    std::map<Color, std::size_t> in_block;
    for (std::size_t k = start; k < end; ++k)
      for (Color x : h[k].pair) ++in_block[x];
    for (const auto& [x, count] : in_block) cert.per_color[x] += std::min<std::size_t>(count, 2);
  }
  return cert;
}

}  // namespace majority
