#include "uct_lambda/experiment.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace uct_lambda {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("uct_lambda_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, ErrorsNameTheirLocation) {
  EXPECT_EQ(config_error({{"agents", {{{"strategy", "global_sd"}}}}}).rfind("config.agents[0].strategy", 0), 0u);
  EXPECT_EQ(config_error({{"environments", {"chess"}}}).rfind("config.environments[0].name", 0), 0u);
  EXPECT_EQ(config_error({{"agents", {{{"strategy", "vanilla"}, {"C", {1, -2}}}}}}).rfind("config.agents[0].C", 0), 0u);
  EXPECT_EQ(config_error({{"iterations", {100, 0}}}).rfind("config.iterations", 0), 0u);
  EXPECT_EQ(config_error({{"episodes", 0}}).rfind("config.episodes", 0), 0u);
  EXPECT_EQ(config_error({{"colour", 1}}).rfind("config.colour", 0), 0u);
  EXPECT_EQ(config_error({{"environments", {{{"name", "navigation"}, {"params", {{"rows", 0}}}}}}})
                .rfind("config.environments[0]", 0),
            0u);
  EXPECT_EQ(config_error({{"scale_test",
                           {{"environment", "connect4"}, {"agents", {"vanilla"}}, {"mu", {1, 0}}}}})
                .rfind("config.scale_test.mu", 0),
            0u);
}

TEST(Config, FullGridCellCount) {
  json agents = json::array();
  for (auto kind : kAllStrategies) agents.push_back({{"strategy", std::string(strategy_name(kind))}, {"C", "grid"}});
  const auto cfg = parse_config({{"environments", {"navigation", "connect4"}},
                                 {"iterations", {100, 500, 2500}},
                                 {"agents", agents}});
  EXPECT_EQ(cfg.agents.size(), 120u);
  EXPECT_EQ(plan_cells(cfg).size(), 12u * 10u * 3u * 2u);
}

TEST(Config, DefaultsAndOpponent) {
  const auto cfg = parse_config({{"opponent", {{"strategy", "local_std"}, {"C", 1}, {"iterations", 50}}}});
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.episodes, 200);
  EXPECT_EQ(cfg.games_per_side, 100);
  EXPECT_EQ(cfg.opponent.name, "local_std:C=1");
  EXPECT_EQ(cfg.opponent.iterations, 50);
  EXPECT_EQ(ExperimentConfig{}.opponent.name, "global_std:C=4");
  EXPECT_EQ(ExperimentConfig{}.opponent.iterations, 500);
}

ExperimentConfig small_config(const fs::path& out) {
  auto cfg = parse_config({{"environments", {{{"name", "navigation"}, {"params", {{"rows", 4}, {"cols", 4}}}, {"horizon", 20}}}},
                           {"agents", {{{"strategy", "global_std"}, {"C", 2}}}},
                           {"iterations", {10}},
                           {"episodes", 10}});
  cfg.output = out.string();
  return cfg;
}

TEST(Run, SmallestRunIsDeterministic) {
  const auto dir = scratch_dir("run");
  auto cfg = small_config(dir / "a");
  const auto rows = cmd_run(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].task, "navigation@10");
  EXPECT_EQ(rows[0].episodes, 10);
  const auto first = slurp(dir / "a" / "results.csv");
  EXPECT_EQ(first.substr(0, first.find('\n')), kResultsHeader);

  cfg.jobs = 3;
  cfg.output = (dir / "b").string();
  cmd_run(cfg);
  EXPECT_EQ(slurp(dir / "b" / "results.csv"), first);
}

TEST(Run, ResultsRoundTrip) {
  const auto dir = scratch_dir("roundtrip");
  const auto rows = cmd_run(small_config(dir));
  const auto back = read_results(dir / "results.csv");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].mean, rows[0].mean);
  EXPECT_EQ(back[0].std_error, rows[0].std_error);
  EXPECT_EQ(back[0].agent, rows[0].agent);
}

void write_results(const fs::path& path, const std::vector<std::string>& lines) {
  std::vector<std::string> body(lines);
  write_lines(path, kResultsHeader, body);
}

TEST(Score, HandCraftedResults) {
  const auto dir = scratch_dir("score");
  write_results(dir / "results.csv",
                {"A,vanilla,1,x@100,x,100,3,0,10,42", "B,vanilla,2,x@100,x,100,2,0,10,42",
                 "C,vanilla,4,x@100,x,100,1,0,10,42", "A,vanilla,1,y@100,y,100,0,0,10,42",
                 "B,vanilla,2,y@100,y,100,5,0,10,42", "C,vanilla,4,y@100,y,100,5,0,10,42"});
  const auto report = cmd_score(dir / "results.csv", dir);
  ASSERT_EQ(report.scopes.size(), 2u);
  const auto& all = report.scopes.back();
  EXPECT_EQ(all.name, "all");
  // A vs B: better on x, worse on y. B vs C: better on x, tie on y.
  EXPECT_EQ(all.matrix(0, 1), 0.0);
  EXPECT_EQ(all.matrix(1, 2), 0.5);
  EXPECT_EQ(all.matrix(0, 2), 0.0);
  EXPECT_EQ(all.scores, (std::vector<double>{0.0, 0.25, -0.25}));
  EXPECT_TRUE(fs::exists(dir / "pairings_100.csv"));
  EXPECT_TRUE(fs::exists(dir / "pairings_all.csv"));
  const auto scores = slurp(dir / "scores.csv");
  EXPECT_NE(scores.find("all,1,B,0.25"), std::string::npos) << scores;
}

TEST(Score, PermutedInputGivesPermutedOutput) {
  const auto dir = scratch_dir("permute");
  const std::vector<std::string> lines{"A,vanilla,1,x@100,x,100,3,0,10,42", "B,vanilla,2,x@100,x,100,2,0,10,42",
                                       "C,vanilla,4,x@100,x,100,1,0,10,42", "A,vanilla,1,y@100,y,100,0,0,10,42",
                                       "B,vanilla,2,y@100,y,100,5,0,10,42", "C,vanilla,4,y@100,y,100,6,0,10,42"};
  write_results(dir / "a.csv", lines);
  write_results(dir / "b.csv", {lines[2], lines[5], lines[0], lines[1], lines[4], lines[3]});
  const auto a = score_results(read_results(dir / "a.csv")).scopes.back();
  const auto b = score_results(read_results(dir / "b.csv")).scopes.back();
  for (std::size_t i = 0; i < 3; ++i) {
    const auto bi = std::find(b.matrix.agents.begin(), b.matrix.agents.end(), a.matrix.agents[i]) - b.matrix.agents.begin();
    EXPECT_EQ(a.scores[i], b.scores[bi]);
    for (std::size_t j = 0; j < 3; ++j) {
      const auto bj = std::find(b.matrix.agents.begin(), b.matrix.agents.end(), a.matrix.agents[j]) - b.matrix.agents.begin();
      EXPECT_EQ(a.matrix(i, j), b.matrix(bi, bj));
    }
  }
}

TEST(Score, BestOverCPicksEachStrategysBestCell) {
  const auto dir = scratch_dir("bestc");
  write_results(dir / "results.csv",
                {"vanilla:C=1,vanilla,1,x@100,x,100,3,0,10,42", "vanilla:C=2,vanilla,2,x@100,x,100,9,0,10,42",
                 "global_std:C=1,global_std,1,x@100,x,100,5,0,10,42"});
  const auto all = score_results(read_results(dir / "results.csv"), true).scopes.back();
  ASSERT_EQ(all.matrix.agents, (std::vector<std::string>{"vanilla", "global_std"}));
  EXPECT_EQ(all.matrix(0, 1), 1.0);
}

TEST(Score, IncompleteGridListsMissingCells) {
  const auto dir = scratch_dir("incomplete");
  write_results(dir / "results.csv", {"A,vanilla,1,x@100,x,100,3,0,10,42", "B,vanilla,2,x@100,x,100,2,0,10,42",
                                      "A,vanilla,1,y@100,y,100,0,0,10,42"});
  try {
    cmd_score(dir / "results.csv", dir);
    FAIL() << "expected MissingCellError";
  } catch (const MissingCellError& e) {
    EXPECT_NE(std::string(e.what()).find("B @ y@100"), std::string::npos) << e.what();
  }
}

TEST(ScaleTest, UnitScaleMatchesRunAndScaleFreeRowsAgree) {
  const auto dir = scratch_dir("scale");
  auto cfg = parse_config({{"environments", {"tictactoe"}},
                           {"agents", {{{"strategy", "global_std"}, {"C", 2}}, {{"strategy", "vanilla"}, {"C", 1}}}},
                           {"iterations", {20}},
                           {"games_per_side", 5},
                           {"opponent", {{"strategy", "global_std"}, {"C", 4}, {"iterations", 20}}},
                           {"scale_test",
                            {{"environment", "tictactoe"},
                             {"agents", {{{"strategy", "global_std"}, {"C", 2}}, {{"strategy", "vanilla"}, {"C", 1}}}},
                             {"iterations", 20},
                             {"mu", {1, 0.125, 64}}}}});
  cfg.output = dir.string();
  const auto run_rows = cmd_run(cfg);
  const auto scale_rows = cmd_scale_test(cfg);
  ASSERT_EQ(scale_rows.size(), 6u);
  EXPECT_EQ(scale_rows[0].mean, run_rows[0].mean);
  EXPECT_EQ(scale_rows[3].mean, run_rows[1].mean);
  EXPECT_EQ(scale_rows[1].normalized_mean, scale_rows[0].normalized_mean);
  EXPECT_EQ(scale_rows[2].normalized_mean, scale_rows[0].normalized_mean);
  EXPECT_DOUBLE_EQ(scale_rows[2].mean, 64.0 * scale_rows[0].mean);
  EXPECT_TRUE(fs::exists(dir / "scale_test.csv"));
}

#ifdef UCT_LAMBDA_CLI
int run_cli(const std::string& args) {
  const std::string cmd = std::string(UCT_LAMBDA_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch_dir("cli");
  {
    std::ofstream(dir / "bad.json") << R"({"agents": [{"strategy": "nope"}], "environments": ["navigation"]})";
    std::ofstream(dir / "good.json") << R"({"agents": ["global_std"], "iterations": [5],
      "environments": [{"name": "navigation", "params": {"rows": 3, "cols": 3}, "horizon": 10}]})";
  }
  EXPECT_EQ(run_cli("run --config " + (dir / "bad.json").string()), 2);
  EXPECT_EQ(run_cli("run --config " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("run --config " + (dir / "good.json").string() + " --episodes 0"), 2);
  const auto out = (dir / "out").string();
  EXPECT_EQ(run_cli("run --config " + (dir / "good.json").string() + " --episodes 4 --jobs 1 --out " + out), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "results.csv"));
  EXPECT_EQ(run_cli("score --results " + out + "/results.csv --out " + out), 2);  // one agent cannot be scored
}
#endif

}  // namespace
}  // namespace uct_lambda
