#include <iostream>

#include <CLI11.hpp>

#include "majority/cli.hpp"

namespace {

void shared_options(CLI::App* app, majority::cli::RunConfig& cfg) {
  app->add_option("--in", cfg.in_path, "instance file")->required();
  app->add_flag("--json", cfg.json, "emit the report as JSON");
  app->add_flag("!--no-timing", cfg.timing, "leave wall-clock time out of the report");
  app->add_option("--seed", cfg.seed, "seed for randomized steps");
  app->add_option("--jobs", cfg.jobs, "worker threads for enumerations")->check(CLI::PositiveNumber);
  app->add_option("--oracle-budget", cfg.oracle_budget, "largest enumeration an oracle may run")
      ->envname("MAJORITY_ORACLE_BUDGET")
      ->check(CLI::PositiveNumber);
  app->add_option("--restart-budget", cfg.restart_budget, "local-search restarts in the base case")
      ->envname("MAJORITY_RESTART_BUDGET")
      ->check(CLI::PositiveNumber);
  app->add_option("--amc-threshold", cfg.amc_threshold,
                  "minority size still counted as dominant in Stage 3");
  app->add_option("--out", cfg.out_path, "write the coloring here");
}

}  // namespace

int main(int argc, char** argv) {
  majority::cli::RunConfig cfg;
  CLI::App app{"Majority colorings: generators, solvers, verifiers and oracles"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "emit a prefix of a countable graph family");
  gen->add_option("--family", cfg.family, "family name")->required();
  gen->add_option("--size", cfg.size, "prefix length T")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", cfg.seed, "seed for randomized families and lists");
  gen->add_option("--param", cfg.params, "family parameter key=value (repeatable)");
  gen->add_option("--out", cfg.out_path, "write the instance here instead of stdout");
  gen->add_flag("--json", cfg.json, "emit the report as JSON (with --out)");
  gen->add_flag("!--no-timing", cfg.timing, "leave wall-clock time out of the report");

  auto* solve = app.add_subcommand("solve", "run a solver and verify its output");
  solve->require_subcommand(1);
  for (const char* name :
       {"lovasz", "bernardi", "pipeline", "greedy-dag", "peel", "pipeline-directed"})
    shared_options(solve->add_subcommand(name), cfg);

  auto* verify = app.add_subcommand("verify", "check a coloring for the majority property");
  shared_options(verify, cfg);
  verify->add_option("--coloring", cfg.coloring_path, "coloring file")->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force existence and choosability");
  oracle->require_subcommand(1);
  shared_options(oracle->add_subcommand("exists"), cfg);
  auto* choosable = oracle->add_subcommand("choosable");
  shared_options(choosable, cfg);
  choosable->add_option("--k", cfg.k, "list size")->check(CLI::PositiveNumber);
  choosable->add_option("--universe", cfg.universe, "colors available for lists")
      ->check(CLI::PositiveNumber);

  auto* backforth = app.add_subcommand("backforth", "select 2-sublists for the family sets");
  shared_options(backforth, cfg);
  std::uint64_t steps = 0;
  auto* steps_opt = backforth->add_option("--steps", steps, "schedule steps to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : majority::cli::kUsage;
  }

  auto* top = app.get_subcommands().front();
  cfg.command = top->get_name();
  if (!top->get_subcommands().empty()) cfg.mode = top->get_subcommands().front()->get_name();
  if (steps_opt->count() > 0) cfg.steps = steps;
  return majority::cli::run(cfg, std::cout, std::cerr);
}
