// Command line front end: run tournaments, score them, and sweep reward scales.
//
//   uct-lambda run        --config exp.json [--seed k] [--episodes n] [--jobs N] [--out dir]
//   uct-lambda score      --config exp.json [--results file] [--out dir] [--best-over-c]
//   uct-lambda scale-test --config exp.json [--seed k] [--episodes n] [--jobs N] [--out dir]
//
// Exit codes: 0 success, 2 configuration error, 1 internal error.

#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "uct_lambda/experiment.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> episodes;
  std::optional<int> jobs;
  std::optional<std::string> out;
  bool full = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Experiment config (JSON)")->required();
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--episodes", o.episodes,
                  "Episodes per single-player cell; also games per side for two-player cells");
  cmd->add_option("--jobs", o.jobs, "Concurrent episodes (default: all cores)");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_flag("--full", o.full, "Full-size evaluation: 2000 episodes, 2000 games per side");
}

uct_lambda::ExperimentConfig load(const Overrides& o) {
  auto cfg = uct_lambda::load_config(o.config);
  if (o.full) {
    cfg.episodes = 2000;
    cfg.games_per_side = 2000;
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.episodes) {
    if (*o.episodes < 1) throw uct_lambda::ConfigError("--episodes", "must be >= 1");
    cfg.episodes = *o.episodes;
    cfg.games_per_side = *o.episodes;
  }
  cfg.jobs = o.jobs.value_or(uct_lambda::default_jobs());
  if (cfg.jobs < 1) throw uct_lambda::ConfigError("--jobs", "must be >= 1");
  if (o.out) cfg.output = *o.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UCT with scale-free exploration strategies"};
  app.require_subcommand(1);

  Overrides run_opts, scale_opts, score_opts;
  auto* run = app.add_subcommand("run", "Evaluate every agent on every task, write results.csv");
  add_common(run, run_opts);

  auto* scale = app.add_subcommand("scale-test", "Reward-scale sweep, write scale_test.csv");
  add_common(scale, scale_opts);

  auto* score = app.add_subcommand("score", "Pairings matrices and normalized scores from results.csv");
  std::optional<std::string> results_path;
  bool best_over_c = false;
  score->add_option("--config", score_opts.config, "Experiment config (JSON)");
  score->add_option("--results", results_path, "Results CSV (default: <out>/results.csv)");
  score->add_option("--out", score_opts.out, "Output directory");
  score->add_flag("--best-over-c", best_over_c, "Score strategies by their best C per task");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      uct_lambda::cmd_run(load(run_opts), &std::cout);
    } else if (*scale) {
      uct_lambda::cmd_scale_test(load(scale_opts), &std::cout);
    } else if (*score) {
      std::filesystem::path out = score_opts.out.value_or("");
      if (out.empty()) {
        out = score_opts.config.empty() ? std::filesystem::path(".")
                                        : std::filesystem::path(uct_lambda::load_config(score_opts.config).output);
      }
      const auto results = results_path ? std::filesystem::path(*results_path) : out / "results.csv";
      uct_lambda::cmd_score(results, out, best_over_c, &std::cout);
    }
  } catch (const uct_lambda::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const uct_lambda::MissingCellError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
