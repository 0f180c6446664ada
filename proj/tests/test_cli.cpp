#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "majority/cli.hpp"

using namespace majority;
namespace fs = std::filesystem;

namespace {

const std::string kSamples = MAJORITY_SAMPLES;
const std::string kBinary = MAJORITY_BINARY;

std::string sample(const std::string& name) { return kSamples + "/" + name; }

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cfg(cli::RunConfig cfg) {
  cfg.timing = false;
  std::ostringstream out, err;
  const int code = cli::run(cfg, out, err);
  return {code, out.str(), err.str()};
}

cli::RunConfig command(const std::string& cmd, const std::string& mode, const std::string& in) {
  cli::RunConfig cfg;
  cfg.command = cmd;
  cfg.mode = mode;
  cfg.in_path = in;
  return cfg;
}

class TempDir {
public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("majority_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = (path_ / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
  fs::path path_;
};

// Runs the built binary; returns exit status and stdout.
Outcome run_shell(const std::string& line) {
  const std::string cmd = line + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (const auto n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

Outcome shell(const std::string& args) { return run_shell(kBinary + " " + args); }

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST(Verify, TriangleMonochromaticFails) {
  auto cfg = command("verify", "", sample("k3.graph"));
  cfg.coloring_path = sample("mono.col");
  const auto r = run_cfg(cfg);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "majority: false")) << r.out;
  EXPECT_TRUE(has_line(r.out, "failing_vertices: 3")) << r.out;
}

TEST(Verify, PartialColoringIsAnError) {
  TempDir dir;
  auto cfg = command("verify", "", sample("k3.graph"));
  cfg.coloring_path = dir.write("partial.col", "c 0 1\n");
  const auto r = run_cfg(cfg);
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("1"), std::string::npos);
}

TEST(Oracle, DagFiveIsTwoChoosable) {
  auto cfg = command("oracle", "choosable", sample("dag5.graph"));
  cfg.k = 2;
  cfg.universe = 4;
  const auto r = run_cfg(cfg);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "choosable(bounded): true")) << r.out;
}

TEST(Oracle, ExistsGivesWitness) {
  cli::RunConfig cfg = command("oracle", "exists", sample("k3.graph"));
  cfg.json = true;
  const auto r = run_cfg(cfg);
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["exists"].get<bool>());
  EXPECT_EQ(j["witness"].size(), 3u);
}

TEST(Oracle, BudgetRefusalExitsThree) {
  auto cfg = command("oracle", "choosable", sample("halfgraph.graph"));
  cfg.universe = 6;
  cfg.oracle_budget = 10;
  const auto r = run_cfg(cfg);
  EXPECT_EQ(r.code, cli::kRefused);
  EXPECT_NE(r.err.find("refused"), std::string::npos);
}

TEST(Solve, PipelineOnHalfGraphPasses) {
  auto cfg = command("solve", "pipeline", sample("halfgraph.graph"));
  cfg.json = true;
  const auto r = run_cfg(cfg);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["self_verification"], "passed");
  EXPECT_FALSE(j["result"]["violations"].get<bool>());
  for (const auto& row : j["vertices"]) {
    const auto status = row["status"].get<std::string>();
    EXPECT_TRUE(status == "exact-satisfied" || status == "certificate-satisfied") << status;
  }
  EXPECT_EQ(j["coloring"].size(), 10u);
}

TEST(Solve, EverySolverSelfVerifies) {
  TempDir dir;
  const std::string undirected =
      "graph undirected\nv 0\nv 1\nv 2\nv 3\ne 0 1\ne 1 2\ne 2 3\ne 3 0\ne 0 2\n";
  const std::string bernardi =
      "graph undirected\nv 0\nv 1\nv 2\nv 3\ne 0 1\ne 0 2\ne 1 3\n"
      "l 0 0 1 2 3\nl 1 0 1 2 3\nl 2 0 1\nl 3 1 2\n";
  const std::string peel =
      "graph directed\nv 0\nv 1\nv 2\nv 3\ne 0 1\ne 1 0\ne 0 2\ne 1 3\ne 2 1\n"
      "l 0 0 1 2 3\nl 1 0 1 2 3\nl 2 0 1\nl 3 1 2\n";
  const struct {
    const char* mode;
    std::string in;
  } cases[] = {
      {"lovasz", dir.write("u.graph", undirected)},
      {"bernardi", dir.write("b.graph", bernardi)},
      {"pipeline", sample("halfgraph.graph")},
      {"greedy-dag", sample("dag5.graph")},
      {"peel", dir.write("p.graph", peel)},
  };
  for (const auto& c : cases) {
    auto cfg = command("solve", c.mode, c.in);
    cfg.out_path = dir.file(std::string(c.mode) + ".col");
    const auto r = run_cfg(cfg);
    EXPECT_EQ(r.code, 0) << c.mode << ": " << r.err;
    EXPECT_TRUE(has_line(r.out, "self_verification: passed")) << c.mode << "\n" << r.out;
    // The written coloring is the one in the report.
    const auto written = cli::read_file(cfg.out_path);
    std::istringstream is(written);
    for (std::string line; std::getline(is, line);)
      EXPECT_TRUE(has_line(r.out, "  " + line)) << c.mode << " " << line;
  }
}

TEST(Solve, PipelineDirectedOnGeneratedInstance) {
  TempDir dir;
  cli::RunConfig g;
  g.command = "gen";
  g.family = "directed_half_graph";
  g.size = 30;
  g.seed = 4;
  const auto generated = run_cfg(g);
  ASSERT_EQ(generated.code, 0);
  auto cfg = command("solve", "pipeline-directed", dir.write("d.graph", generated.out));
  const auto r = run_cfg(cfg);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "self_verification: passed"));
}

TEST(Solve, InfeasibleWeightsExitTwo) {
  TempDir dir;
  const auto in = dir.write("inf.graph",
                            "graph undirected\nv 0\nv 1\ne 0 1\n"
                            "l 0 0 1 2 3\nl 1 0 1\n"
                            "r 0 0 0\nr 0 1 0\nr 0 2 0\nr 0 3 1/2\n");
  const auto r = run_cfg(command("solve", "bernardi", in));
  EXPECT_EQ(r.code, cli::kInfeasible);
  EXPECT_NE(r.err.find("vertex 0"), std::string::npos) << r.err;
}

TEST(Solve, CyclicInputToGreedyIsUsageError) {
  TempDir dir;
  const auto in = dir.write("cyc.graph", "graph directed\nv 0\nv 1\ne 0 1\ne 1 0\n");
  const auto r = run_cfg(command("solve", "greedy-dag", in));
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("cycle"), std::string::npos);
}

TEST(Solve, ParseErrorNamesLine) {
  TempDir dir;
  const auto in = dir.write("bad.graph", "graph undirected\nv 0\nq 1\n");
  const auto r = run_cfg(command("solve", "lovasz", in));
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("3"), std::string::npos) << r.err;
}

TEST(Solve, MissingInputFile) {
  const auto r = run_cfg(command("solve", "lovasz", "/nonexistent/x.graph"));
  EXPECT_EQ(r.code, cli::kUsage);
}

TEST(SelfCheck, TamperedPipelineResultIsRejected) {
  const auto in = parse_instance(cli::read_file(sample("halfgraph.graph")));
  const auto p = in.prefix();
  auto res = three_stage_solve(p, in.lists);
  ASSERT_TRUE(cli::detail::pipeline_self_check(p, in.lists, res));
  auto broken = res;
  broken.coloring.clear(1);
  EXPECT_FALSE(cli::detail::pipeline_self_check(p, in.lists, broken));
  broken = res;
  broken.coloring.set(1, 99);
  EXPECT_FALSE(cli::detail::pipeline_self_check(p, in.lists, broken));
}

TEST(Gen, StdoutIsTheInstance) {
  cli::RunConfig g;
  g.command = "gen";
  g.family = "half_graph";
  g.size = 10;
  const auto r = run_cfg(g);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, cli::read_file(sample("halfgraph.graph")));
  g.params = {"lists=0"};
  const auto bare = parse_instance(run_cfg(g).out);
  EXPECT_FALSE(bare.has_any_lists());
  g.params = {"colour=red"};
  EXPECT_EQ(run_cfg(g).code, cli::kUsage);
}

TEST(Gen, OutFileReportsDigest) {
  TempDir dir;
  cli::RunConfig g;
  g.command = "gen";
  g.family = "grid";
  g.size = 25;
  g.out_path = dir.file("grid.graph");
  g.json = true;
  const auto r = run_cfg(g);
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["output_digest"], cli::fnv1a64(cli::read_file(g.out_path)));
}

TEST(Backforth, ReportsHistoriesAndSublists) {
  TempDir dir;
  const auto in = dir.write("bf.graph",
                            "graph undirected\nv 0\nv 1\nv 2\nv 3\n"
                            "l 0 1 2 3\nl 1 1 2 3\nl 2 1 2 3\nl 3 1 2 3\ns 1 0 1 2 3\n");
  auto cfg = command("backforth", "", in);
  cfg.steps = 10;
  cfg.out_path = dir.file("sub.txt");
  const auto r = run_cfg(cfg);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "result.history_violations: 0")) << r.out;
  EXPECT_TRUE(has_line(r.out, "  l' 0 1 2")) << r.out;
  EXPECT_EQ(cli::read_file(cfg.out_path), "l' 0 1 2\nl' 1 1 3\nl' 2 2 3\nl' 3 1 2\n");
}

TEST(Report, NoTimingIsDeterministicAndJobsDoNotMatter) {
  auto cfg = command("oracle", "choosable", sample("dag5.graph"));
  cfg.json = true;
  cfg.jobs = 1;
  const auto a = run_cfg(cfg);
  const auto b = run_cfg(cfg);
  EXPECT_EQ(a.out, b.out);
  cfg.jobs = 8;
  auto c = run_cfg(cfg).out;
  // Only the recorded parameter differs.
  const auto ja = nlohmann::json::parse(a.out);
  auto jc = nlohmann::json::parse(c);
  jc["parameters"]["jobs"] = 1;
  EXPECT_EQ(ja, jc);
  EXPECT_EQ(ja.find("time_ms"), ja.end());
}

TEST(Report, TimingPresentByDefault) {
  auto cfg = command("verify", "", sample("k3.graph"));
  cfg.coloring_path = sample("mono.col");
  std::ostringstream out, err;
  ASSERT_EQ(cli::run(cfg, out, err), 0);
  EXPECT_NE(out.str().find("time_ms: "), std::string::npos);
}

TEST(Config, Validation) {
  cli::RunConfig cfg;
  cfg.command = "frobnicate";
  EXPECT_EQ(run_cfg(cfg).code, cli::kUsage);
  cfg = command("solve", "lovasz", sample("k3.graph"));
  cfg.jobs = 0;
  EXPECT_EQ(run_cfg(cfg).code, cli::kUsage);
  cfg = command("verify", "", sample("k3.graph"));
  EXPECT_EQ(run_cfg(cfg).code, cli::kUsage);
}

TEST(Binary, ArgumentHandling) {
  EXPECT_EQ(shell("--help").code, 0);
  EXPECT_EQ(shell("").code, cli::kUsage);
  EXPECT_EQ(shell("solve lovasz").code, cli::kUsage);
  EXPECT_EQ(shell("solve lovasz --in " + sample("k3.graph") + " --jobs 0").code, cli::kUsage);
  const auto r = shell("verify --in " + sample("k3.graph") + " --coloring " + sample("mono.col") +
                       " --no-timing");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "majority: false"));
  EXPECT_EQ(r.out.find("time_ms"), std::string::npos);
}

TEST(Binary, EnvironmentBudgetAndFlagPrecedence) {
  const std::string args = "oracle choosable --in " + sample("dag5.graph") + " --no-timing";
  EXPECT_EQ(run_shell("MAJORITY_ORACLE_BUDGET=2 " + kBinary + " " + args).code, cli::kRefused);
  EXPECT_EQ(
      run_shell("MAJORITY_ORACLE_BUDGET=2 " + kBinary + " " + args + " --oracle-budget 10000000")
          .code,
      0);
}
