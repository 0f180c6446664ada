#pragma once

// Command dispatch and report rendering for the `majority` tool.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "backforth.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "instance_io.hpp"
#include "solve_directed.hpp"
#include "solve_undirected.hpp"
#include "verify.hpp"

namespace majority::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInfeasible = 2,
  kRefused = 3,
  kSelfCheckFailed = 4,
};

struct RunConfig {
  std::string command;  // gen | solve | verify | oracle | backforth
  std::string mode;     // solver or oracle name
  std::string in_path;
  std::string coloring_path;
  std::string out_path;
  // gen
  std::string family;
  int size = 0;
  std::vector<std::string> params;  // key=value
  // shared
  std::uint64_t seed = 0;
  std::uint64_t oracle_budget = 10'000'000;
  std::uint64_t restart_budget = 64;
  std::size_t amc_threshold = 3;
  bool json = false;
  bool timing = true;
  unsigned jobs = 1;
  // oracle choosable
  int k = 2;
  int universe = 4;
  // backforth
  std::optional<std::uint64_t> steps;

  void validate() const {
    static const std::vector<std::string> commands = {"gen", "solve", "verify", "oracle",
                                                      "backforth"};
    if (std::find(commands.begin(), commands.end(), command) == commands.end())
      throw ValidationError("unknown subcommand '" + command + "'");
    if (oracle_budget == 0 || restart_budget == 0) throw ValidationError("budgets must be positive");
    if (jobs == 0) throw ValidationError("--jobs must be positive");
    if (command != "gen" && in_path.empty()) throw ValidationError("--in is required");
    if (command == "verify" && coloring_path.empty())
      throw ValidationError("--coloring is required");
    if (command == "gen" && (family.empty() || size < 1))
      throw ValidationError("gen needs --family and --size >= 1");
  }
};

inline std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ValidationError("cannot write '" + path + "'");
}

// ---------------------------------------------------------------------------
// Text rendering: scalars as `key: value`, nested objects with dotted keys,
// arrays of objects as an indented table of `field=value` rows.

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + scalar_text(x);
    return s.empty() ? "-" : s;
  }
  if (v.is_null()) return "-";
  return v.dump();
}

inline void render(std::ostream& os, const std::string& prefix, const Json& obj) {
  for (const auto& [key, v] : obj.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (v.is_object()) {
      render(os, name, v);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << name << ": " << v.size() << " rows\n";
      for (const auto& row : v) {
        os << ' ';
        for (const auto& [f, x] : row.items()) os << ' ' << f << '=' << scalar_text(x);
        os << '\n';
      }
    } else if (v.is_array() && v.empty()) {
      os << name << ": none\n";
    } else if (v.is_array() && v.front().is_string()) {
      os << name << ": " << v.size() << " lines\n";
      for (const auto& x : v) os << "  " << scalar_text(x) << '\n';
    } else if (v.is_array()) {
      os << name << ":";
      for (const auto& x : v) os << ' ' << scalar_text(x);
      os << '\n';
    } else {
      os << name << ": " << scalar_text(v) << '\n';
    }
  }
}

inline std::string rational_text(const Rational& r) { return r.to_string(); }

// File-format records, one string per line.
inline Json record_lines(const std::string& text) {
  Json rows = Json::array();
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) rows.push_back(line);
  return rows;
}

inline Json coloring_rows(const Coloring& c) { return record_lines(serialize_coloring(c)); }

inline Json list_json(std::span<const Color> l) {
  Json a = Json::array();
  for (Color x : l) a.push_back(x);
  return a;
}

inline bool colors_from(const Coloring& c, const ListAssignment& lists,
                        std::span<const Vertex> vs) {
  for (Vertex v : vs)
    if (!c.colored(v) || !lists.contains(v, c[v])) return false;
  return true;
}

inline std::vector<Vertex> all_vertices(int n) {
  std::vector<Vertex> vs(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) vs[v] = v;
  return vs;
}

// Lists absent from the file default to `fallback` on every vertex.
inline ListAssignment lists_or(const Instance& in, std::vector<Color> fallback) {
  if (in.has_any_lists()) return in.lists;
  return ListAssignment::uniform(in.size(), std::move(fallback));
}

struct Split {
  std::vector<Vertex> f, i;
};

// F = vertices with 4-lists, I = vertices with 2-lists.
inline Split split_by_list_size(const Instance& in) {
  Split s;
  for (Vertex v = 0; v < in.size(); ++v) {
    if (!in.lists.has(v)) throw ValidationError("vertex " + std::to_string(v) + " has no list");
    const auto k = in.lists[v].size();
    if (k == 4) s.f.push_back(v);
    else if (k == 2) s.i.push_back(v);
    else
      throw ValidationError("vertex " + std::to_string(v) +
                            " needs a 4-list (F) or a 2-list (I), has " + std::to_string(k));
  }
  return s;
}

// Weights from the file, or deg/2 on every colour when none are given.
template <class Degree>
WeightMap weights_or_half_degree(const Instance& in, std::span<const Vertex> f, Degree deg) {
  bool any = false;
  for (Vertex v = 0; v < in.weights.size() && !any; ++v) any = in.weights.has(v);
  if (any) return in.weights;
  return WeightMap::constant_per_vertex(in.lists, f, [&](Vertex v) { return Rational(deg(v), 2); });
}

template <class G>
Json majority_rows(const G& g, const Coloring& c) {
  Json rows = Json::array();
  for (const auto& r : vertex_reports(g, c))
    rows.push_back({{"vertex", r.vertex}, {"color", c[r.vertex]}, {"good", r.good},
                    {"bad", r.bad}, {"ok", r.satisfied}});
  return rows;
}

template <class G>
Json weighted_rows(const G& g, std::span<const Vertex> f, std::span<const Vertex> i,
                   const Coloring& c, const ListAssignment& lists_i, const WeightMap& r) {
  const auto s = majority::detail::check_split(g, f, i);
  Json rows = Json::array();
  for (Vertex v : f) {
    const int load = majority::detail::guarantee_load(g, s, c, lists_i, v, c.at(v));
    const Rational bound = r.at(v, c.at(v));
    rows.push_back({{"vertex", v}, {"color", c[v]}, {"load", load},
                    {"bound", rational_text(bound)}, {"ok", Rational(load) <= bound}});
  }
  return rows;
}

inline std::string class_name(const VertexMeta& m) {
  if (!m.infinite()) return "F";
  return *m.subclass == Subclass::A ? "A" : "B";
}

template <class G>
Json pipeline_json(const Prefix<G>& p, const PipelineResult& res, Json& report) {
  const auto& rep = res.report;
  Json summary;
  summary["stage2_switches"] = rep.stage2_switches;
  summary["backforth_steps"] = rep.selection.steps;
  for (auto s : {VertexStatus::exact_satisfied, VertexStatus::exact_violated,
                 VertexStatus::certificate_satisfied, VertexStatus::certificate_violated,
                 VertexStatus::deferred})
    summary[std::string(to_string(s))] = rep.count(s);
  summary["violations"] = rep.has_violation();
  report["result"] = summary;

  Json rows = Json::array();
  for (Vertex v = 0; v < p.size(); ++v) {
    const auto gb = good_bad_counts(p.graph, res.coloring, v);
    Json row = {{"vertex", v}, {"class", class_name(p.meta[v])},
                {"complete", p.meta[v].complete}, {"color", res.coloring[v]},
                {"good", gb.good}, {"bad", gb.bad},
                {"status", std::string(to_string(rep.status[v]))}};
    if (p.meta[v].infinite()) row["sublist"] = list_json(rep.sublists[v]);
    rows.push_back(std::move(row));
  }
  report["vertices"] = rows;

  Json certs = Json::array();
  for (std::size_t s = 0; s < rep.family_owner.size(); ++s) {
    Json row = {{"set", s + 1},
                {"owner", rep.family_owner[s]},
                {"members", rep.selection.sets[s].size()},
                {"visits", rep.selection.visits[s]},
                {"assigned", rep.selection.history[s].size()}};
    if (rep.selection.visits[s] > 0)
      row["bound"] = not_amc_certificate(rep.selection, s).uniform_bound;
    certs.push_back(std::move(row));
  }
  report["certificates"] = certs;

  Json stage3 = Json::array();
  for (const auto& d : rep.stage3) {
    if (d.subclass != Subclass::B) continue;
    stage3.push_back({{"vertex", d.vertex},
                      {"dominant", d.dominant ? Json(*d.dominant) : Json(nullptr)},
                      {"chosen", d.chosen},
                      {"opposite", d.opposite}});
  }
  report["stage3"] = stage3;
  return report;
}

// Independent re-check of a pipeline colouring.
template <class G>
bool pipeline_self_check(const Prefix<G>& p, const ListAssignment& lists,
                         const PipelineResult& res) {
  const auto f = p.finite_vertices();
  const auto i = p.infinite_vertices();
  if (!res.coloring.total()) return false;
  if (!colors_from(res.coloring, lists, f) || !colors_from(res.coloring, res.report.sublists, i))
    return false;
  for (Vertex v : f) {
    if (!p.meta[v].complete) continue;
    const auto gb = good_bad_counts(p.graph, res.coloring, v);
    if (2 * gb.bad > gb.good + gb.bad) return false;
  }
  if (!scan_histories(res.report.selection, lists).empty()) return false;
  for (const auto& d : res.report.stage3)
    if (d.subclass == Subclass::B && d.dominant && res.coloring[d.vertex] == *d.dominant)
      return false;
  return !res.report.has_violation();
}

}  // namespace detail

// ---------------------------------------------------------------------------

class Runner {
public:
  Runner(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  int run() {
    const auto start = std::chrono::steady_clock::now();
    cfg_.validate();
    int code = kOk;
    if (cfg_.command == "gen") {
      code = gen();
      if (cfg_.out_path.empty()) return code;  // the instance went to stdout
    } else {
      load_input();
      if (cfg_.command == "verify") code = verify();
      else if (cfg_.command == "solve") code = solve();
      else if (cfg_.command == "oracle") code = oracle();
      else code = backforth();
    }
    if (cfg_.timing) {
      const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
      std::ostringstream t;
      t << std::fixed << std::setprecision(3) << ms.count();
      report_["time_ms"] = t.str();
    }
    emit();
    return code;
  }

private:
  void load_input() {
    text_ = read_file(cfg_.in_path);
    report_["command"] = cfg_.command + (cfg_.mode.empty() ? "" : " " + cfg_.mode);
    report_["input"] = cfg_.in_path;
    std::string digest_source = text_;
    if (!cfg_.coloring_path.empty()) {
      coloring_text_ = read_file(cfg_.coloring_path);
      digest_source += '\0' + coloring_text_;
    }
    report_["input_digest"] = fnv1a64(digest_source);
    report_["parameters"] = parameters();
    instance_ = parse_instance(text_);
  }

  Json parameters() const {
    Json p;
    p["seed"] = cfg_.seed;
    p["jobs"] = cfg_.jobs;
    p["oracle_budget"] = cfg_.oracle_budget;
    p["restart_budget"] = cfg_.restart_budget;
    p["amc_threshold"] = cfg_.amc_threshold;
    if (cfg_.command == "oracle" && cfg_.mode == "choosable") {
      p["k"] = cfg_.k;
      p["universe"] = cfg_.universe;
    }
    if (cfg_.command == "backforth")
      p["steps"] = cfg_.steps ? Json(*cfg_.steps) : Json("until-exhausted");
    return p;
  }

  void emit() {
    if (cfg_.json) out_ << report_.dump(2) << '\n';
    else detail::render(out_, "", report_);
  }

  void set_coloring(const Coloring& c) {
    report_["coloring"] = detail::coloring_rows(c);
    if (!cfg_.out_path.empty()) write_file(cfg_.out_path, serialize_coloring(c));
  }

  int gated(bool passed) {
    report_["self_verification"] = passed ? "passed" : "FAILED";
    return passed ? kOk : kSelfCheckFailed;
  }

  // --- gen ---------------------------------------------------------------
  int gen() {
    FamilySpec spec{cfg_.family, cfg_.size, cfg_.seed, {}};
    int universe = 6;
    bool with_lists = true;
    for (const auto& kv : cfg_.params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ValidationError("--param expects key=value, got '" + kv + "'");
      const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
      spec.params[key] = value;
    }
    universe = spec.int_param("universe", universe);
    with_lists = spec.int_param("lists", 1) != 0;
    for (const auto& [key, value] : spec.params)
      if (key != "universe" && key != "lists" &&
          !(key == "delta" && spec.family.find("random_locally_finite") != std::string::npos))
        throw ValidationError("unknown parameter '" + key + "' for family " + spec.family);
    Instance in = generate(spec);
    if (with_lists) assign_pipeline_lists(in, universe, cfg_.seed);
    const std::string text = serialize_instance(in);
    if (cfg_.out_path.empty()) {
      out_ << text;
      return kOk;
    }
    write_file(cfg_.out_path, text);
    report_["command"] = "gen";
    report_["family"] = spec.family;
    report_["size"] = spec.size;
    report_["seed"] = spec.seed;
    report_["output"] = cfg_.out_path;
    report_["output_digest"] = fnv1a64(text);
    return kOk;
  }

  // --- verify ------------------------------------------------------------
  int verify() {
    const Coloring c = parse_coloring(coloring_text_, instance_.size());
    if (!c.total()) {
      for (Vertex v = 0; v < c.size(); ++v)
        if (!c.colored(v)) throw PartialColoringError(v);
    }
    Json rows;
    MajorityReport rep;
    if (instance_.directed()) {
      rep = is_majority_digraph(instance_.digraph(), c);
      rows = detail::majority_rows(instance_.digraph(), c);
    } else {
      rep = is_majority(instance_.graph(), c);
      rows = detail::majority_rows(instance_.graph(), c);
    }
    report_["majority"] = rep.majority;
    report_["failing_vertices"] = rep.failures.size();
    if (instance_.has_any_lists()) {
      const auto vs = detail::all_vertices(instance_.size());
      bool from_lists = true;
      for (Vertex v : vs)
        if (instance_.lists.has(v) && !instance_.lists.contains(v, c[v])) from_lists = false;
      report_["colors_from_lists"] = from_lists;
    }
    report_["vertices"] = rows;
    return kOk;
  }

  // --- solve -------------------------------------------------------------
  int solve() {
    const auto& m = cfg_.mode;
    if (m == "lovasz") return solve_lovasz();
    if (m == "bernardi") return solve_bernardi();
    if (m == "pipeline") return solve_pipeline();
    if (m == "greedy-dag") return solve_greedy();
    if (m == "peel") return solve_peel();
    if (m == "pipeline-directed") return solve_pipeline_directed();
    throw ValidationError("unknown solver '" + m + "'");
  }

  BaseCaseOptions base_options() const {
    BaseCaseOptions o;
    o.restart_budget = static_cast<std::size_t>(cfg_.restart_budget);
    o.seed = cfg_.seed;
    return o;
  }

  int solve_lovasz() {
    const Graph& g = instance_.graph();
    const auto lists = detail::lists_or(instance_, {0, 1});
    const auto res = lovasz_switch_solve(g, lists);
    report_["result"] = {{"switches", res.switches},
                         {"edges", g.edge_count()},
                         {"total_bad", res.bad_trace.back()}};
    report_["vertices"] = detail::majority_rows(g, res.coloring);
    set_coloring(res.coloring);
    const auto all = detail::all_vertices(g.size());
    return gated(static_cast<bool>(is_majority(g, res.coloring)) &&
                 detail::colors_from(res.coloring, lists, all) && res.switches <= g.edge_count());
  }

  int solve_bernardi() {
    const Graph& g = instance_.graph();
    const auto s = detail::split_by_list_size(instance_);
    const auto r = detail::weights_or_half_degree(instance_, s.f,
                                                  [&](Vertex v) { return g.degree(v); });
    const auto res = bernardi_weighted_solve(g, s.f, s.i, instance_.lists, instance_.lists, r);
    bool decreasing = true;
    for (std::size_t k = 1; k < res.potential_trace.size(); ++k)
      decreasing = decreasing && res.potential_trace[k] < res.potential_trace[k - 1];
    report_["result"] = {{"switches", res.switches},
                         {"phi_initial", res.potential_trace.front().to_string()},
                         {"phi_final", res.potential_trace.back().to_string()},
                         {"phi_strictly_decreasing", decreasing}};
    report_["vertices"] = detail::weighted_rows(g, s.f, s.i, res.coloring, instance_.lists, r);
    set_coloring(res.coloring);
    const bool ok = static_cast<bool>(
                        check_weighted_guarantee(g, s.f, s.i, res.coloring, instance_.lists, r)) &&
                    detail::colors_from(res.coloring, instance_.lists, s.f) && decreasing;
    return gated(ok);
  }

  ListAssignment pipeline_lists() const {
    if (instance_.has_any_lists()) return instance_.lists;
    ListAssignment la(instance_.size());
    for (Vertex v = 0; v < instance_.size(); ++v)
      la.set(v, instance_.meta[v].infinite() ? std::vector<Color>{0, 1, 2}
                                             : std::vector<Color>{0, 1, 2, 3});
    return la;
  }

  int solve_pipeline() {
    const auto p = instance_.prefix();
    const auto lists = pipeline_lists();
    const auto res = three_stage_solve(p, lists, cfg_.amc_threshold);
    detail::pipeline_json(p, res, report_);
    set_coloring(res.coloring);
    return gated(detail::pipeline_self_check(p, lists, res));
  }

  int solve_pipeline_directed() {
    const auto p = instance_.directed_prefix();
    const auto lists = pipeline_lists();
    const auto res = three_stage_solve_directed(p, lists, cfg_.amc_threshold, base_options());
    detail::pipeline_json(p, res, report_);
    set_coloring(res.coloring);
    return gated(detail::pipeline_self_check(p, lists, res));
  }

  int solve_greedy() {
    const Digraph& d = instance_.digraph();
    const auto lists = detail::lists_or(instance_, {0, 1});
    const auto c = greedy_acyclic_solve(d, lists);
    const auto rep = is_majority_digraph(d, c);
    report_["result"] = {{"majority", rep.majority}};
    report_["vertices"] = detail::majority_rows(d, c);
    set_coloring(c);
    return gated(rep.majority && detail::colors_from(c, lists, detail::all_vertices(d.size())));
  }

  int solve_peel() {
    const Digraph& d = instance_.digraph();
    const auto s = detail::split_by_list_size(instance_);
    const auto r = detail::weights_or_half_degree(instance_, s.f,
                                                  [&](Vertex v) { return d.out_degree(v); });
    const auto res = peel_and_solve(d, s.f, s.i, instance_.lists, instance_.lists, r, base_options());
    bool invariant = true;
    Json peels = Json::array();
    for (const auto& st : res.trace.steps) {
      invariant = invariant && st.min_slack >= Rational(0);
      peels.push_back({{"removed", st.removed},
                       {"decremented", st.decremented.size()},
                       {"min_slack", st.min_slack.to_string()}});
    }
    report_["result"] = {
        {"peels", res.trace.steps.size()},
        {"peel_invariant", invariant},
        {"base_case", res.base.used == BaseCaseMode::exhaustive ? "exhaustive" : "local-search"},
        {"base_restarts", res.base.restarts}};
    report_["peels"] = peels;
    report_["vertices"] = detail::weighted_rows(d, s.f, s.i, res.coloring, instance_.lists, r);
    set_coloring(res.coloring);
    const bool ok = static_cast<bool>(
                        check_weighted_guarantee(d, s.f, s.i, res.coloring, instance_.lists, r)) &&
                    detail::colors_from(res.coloring, instance_.lists, s.f) && invariant;
    return gated(ok);
  }

  // --- oracle ------------------------------------------------------------
  int oracle() {
    OracleOptions opt{cfg_.oracle_budget, cfg_.jobs};
    if (cfg_.mode == "exists") {
      const auto lists = detail::lists_or(instance_, {0, 1});
      const auto found = instance_.directed()
                             ? oracle_exists_majority_coloring(instance_.digraph(), lists, opt)
                             : oracle_exists_majority_coloring(instance_.graph(), lists, opt);
      report_["exists"] = found.has_value();
      if (found) report_["witness"] = detail::coloring_rows(*found);
      return kOk;
    }
    if (cfg_.mode == "choosable") {
      const auto res = instance_.directed()
                           ? oracle_choosability(instance_.digraph(), cfg_.k, cfg_.universe, opt)
                           : oracle_choosability(instance_.graph(), cfg_.k, cfg_.universe, opt);
      report_["choosable(bounded)"] = res.choosable;
      report_["assignments_checked"] = res.assignments_checked;
      if (res.witness) {
        Json rows = Json::array();
        for (Vertex v = 0; v < res.witness->size(); ++v)
          rows.push_back({{"vertex", v}, {"list", detail::list_json((*res.witness)[v])}});
        report_["counterexample"] = rows;
      }
      return kOk;
    }
    throw ValidationError("unknown oracle '" + cfg_.mode + "'");
  }

  // --- backforth ---------------------------------------------------------
  int backforth() {
    if (instance_.sets.empty()) throw ValidationError("instance has no family sets ('s' records)");
    BackForth bf(instance_.sets, instance_.lists);
    if (cfg_.steps) bf.run(*cfg_.steps);
    else bf.run_until_exhausted();
    const SelectionState st = std::move(bf).take();
    const auto violations = scan_histories(st, instance_.lists);
    report_["result"] = {{"steps", st.steps},
                         {"sets", st.sets.size()},
                         {"starved_visits", st.starved.size()},
                         {"history_violations", violations.size()}};
    Json sets = Json::array();
    for (std::size_t s = 0; s < st.sets.size(); ++s) {
      Json row = {{"set", instance_.set_indices[s]},
                  {"members", st.sets[s].size()},
                  {"visits", st.visits[s]},
                  {"assigned", st.history[s].size()}};
      Json pairs = Json::array();
      for (const auto& visit : st.history[s])
        pairs.push_back(std::to_string(visit.vertex) + ":" + std::to_string(visit.pair[0]) + "/" +
                        std::to_string(visit.pair[1]));
      row["history"] = pairs;
      if (st.visits[s] > 0) {
        const auto cert = not_amc_certificate(st, s);
        row["bound"] = cert.uniform_bound;
        std::size_t worst = 0;
        for (const auto& [x, count] : cert.per_color) worst = std::max(worst, count);
        row["max_per_color"] = worst;
      }
      sets.push_back(std::move(row));
    }
    report_["certificates"] = sets;
    std::ostringstream subs;
    for (Vertex v = 0; v < static_cast<Vertex>(st.assigned.size()); ++v)
      if (st.assigned[v]) subs << "l' " << v << ' ' << (*st.assigned[v])[0] << ' ' << (*st.assigned[v])[1] << '\n';
    report_["sublists"] = detail::record_lines(subs.str());
    if (!cfg_.out_path.empty()) write_file(cfg_.out_path, subs.str());
    return kOk;
  }

  RunConfig cfg_;
  std::ostream& out_;
  Json report_ = Json::object();
  std::string text_;
  std::string coloring_text_;
  Instance instance_;
};

// Runs one command, writing the report to `out` and diagnostics to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return Runner(cfg, out).run();
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::overflow_error& e) {
    err << "refused: " << e.what() << '\n';
    return kRefused;
  }
}

}  // namespace majority::cli
