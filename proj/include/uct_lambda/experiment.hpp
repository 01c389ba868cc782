#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"
#include "uct_lambda/env/connect4.hpp"
#include "uct_lambda/env/constrictor.hpp"
#include "uct_lambda/env/navigation.hpp"
#include "uct_lambda/env/numbers_race.hpp"
#include "uct_lambda/env/push_your_luck.hpp"
#include "uct_lambda/env/scaled.hpp"
#include "uct_lambda/env/tictactoe.hpp"
#include "uct_lambda/eval.hpp"
#include "uct_lambda/lambda.hpp"

namespace uct_lambda {

using json = nlohmann::json;

/// Invalid experiment configuration; the message starts with the offending location.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what) {}
};

/// Exploration multipliers searched per strategy.
inline const std::vector<double> kDefaultCGrid = {0.125, 0.25, 0.5, 1, 2, 4, 8, 16, 32, 64};

struct EnvironmentSpec {
  std::string name;
  std::string label;  // task prefix; defaults to `name`
  json params = json::object();
  std::optional<int> horizon;
  double scale = 1.0;
};

using AnyModel =
    std::variant<ScaledModel<TicTacToe>, ScaledModel<Connect4>, ScaledModel<Constrictor>,
                 ScaledModel<NumbersRace>, ScaledModel<Navigation>, ScaledModel<PushYourLuck>>;

inline const std::vector<std::string>& environment_names() {
  static const std::vector<std::string> names = {"tictactoe",  "connect4",   "constrictor",
                                                 "numbers_race", "navigation", "push_your_luck"};
  return names;
}

namespace detail {

inline void check_keys(const json& object, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  if (!object.is_object()) throw ConfigError(where, "expected an object");
  for (const auto& [key, value] : object.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; }))
      throw ConfigError(where + "." + key, "unknown field");
  }
}

template <class T>
T get_or(const json& object, const char* key, T fallback, const std::string& where) {
  if (!object.contains(key)) return fallback;
  try {
    return object.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key, e.what());
  }
}

inline int positive_int(const json& object, const char* key, int fallback, const std::string& where) {
  const int v = get_or<int>(object, key, fallback, where);
  if (v < 1) throw ConfigError(where + "." + key, "must be >= 1");
  return v;
}

inline std::vector<double> number_list(const json& value, const std::string& where) {
  std::vector<double> out;
  if (value.is_number()) {
    out.push_back(value.get<double>());
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (!value[i].is_number()) throw ConfigError(where + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(value[i].get<double>());
    }
  } else {
    throw ConfigError(where, "expected a number or a list of numbers");
  }
  if (out.empty()) throw ConfigError(where, "list is empty");
  return out;
}

}  // namespace detail

inline EnvironmentSpec parse_environment(const json& j, const std::string& where) {
  EnvironmentSpec spec;
  if (j.is_string()) {
    spec.name = j.get<std::string>();
  } else {
    detail::check_keys(j, where, {"name", "label", "params", "horizon", "scale"});
    if (!j.contains("name") || !j["name"].is_string()) throw ConfigError(where + ".name", "missing environment name");
    spec.name = j["name"].get<std::string>();
    spec.label = detail::get_or<std::string>(j, "label", "", where);
    if (j.contains("params")) {
      if (!j["params"].is_object()) throw ConfigError(where + ".params", "expected an object");
      spec.params = j["params"];
    }
    if (j.contains("horizon")) spec.horizon = detail::positive_int(j, "horizon", 1, where);
    spec.scale = detail::get_or<double>(j, "scale", 1.0, where);
    if (!(spec.scale > 0.0)) throw ConfigError(where + ".scale", "must be > 0");
  }
  const auto& names = environment_names();
  if (std::find(names.begin(), names.end(), spec.name) == names.end())
    throw ConfigError(where + ".name", "unknown environment '" + spec.name + "'");
  if (spec.label.empty()) spec.label = spec.name;
  return spec;
}

/// Instantiates the environment, its rewards multiplied by `scale * mu`.
inline AnyModel make_model(const EnvironmentSpec& spec, double mu = 1.0,
                           const std::string& where = "environment") {
  const json& p = spec.params;
  const std::string pw = where + ".params";
  const double factor = spec.scale * mu;
  if (!(factor > 0.0)) throw ConfigError(where, "reward scale must be > 0");
  try {
    if (spec.name == "tictactoe") {
      detail::check_keys(p, pw, {});
      return ScaledModel(TicTacToe(spec.horizon.value_or(200)), factor);
    }
    if (spec.name == "connect4") {
      detail::check_keys(p, pw, {});
      return ScaledModel(Connect4(spec.horizon.value_or(200)), factor);
    }
    if (spec.name == "constrictor") {
      detail::check_keys(p, pw, {"size"});
      return ScaledModel(Constrictor(detail::get_or<int>(p, "size", 7, pw), spec.horizon.value_or(200)),
                         factor);
    }
    if (spec.name == "numbers_race") {
      detail::check_keys(p, pw, {"max_pick", "goal"});
      return ScaledModel(NumbersRace(detail::get_or<int>(p, "max_pick", 9, pw),
                                     detail::get_or<int>(p, "goal", 50, pw), spec.horizon.value_or(200)),
                         factor);
    }
    if (spec.name == "navigation") {
      detail::check_keys(p, pw, {"rows", "cols", "max_reset", "reset_probs"});
      const int rows = detail::get_or<int>(p, "rows", 10, pw);
      const int cols = detail::get_or<int>(p, "cols", 10, pw);
      const int horizon = spec.horizon.value_or(50);
      if (p.contains("reset_probs")) {
        std::vector<double> table;
        for (const auto& row : p["reset_probs"])
          for (double v : detail::number_list(row, pw + ".reset_probs")) table.push_back(v);
        return ScaledModel(Navigation(rows, cols, std::move(table), horizon), factor);
      }
      return ScaledModel(Navigation(rows, cols, detail::get_or<double>(p, "max_reset", 0.5, pw), horizon),
                         factor);
    }
    if (spec.name == "push_your_luck") {
      detail::check_keys(p, pw, {"dice", "faces", "bias", "face_values"});
      const int dice = detail::get_or<int>(p, "dice", 2, pw);
      const int faces = detail::get_or<int>(p, "faces", 6, pw);
      const int horizon = spec.horizon.value_or(50);
      auto bias = PushYourLuck::default_bias(dice, faces);
      if (p.contains("bias")) {
        bias.clear();
        for (const auto& row : p["bias"]) bias.push_back(detail::number_list(row, pw + ".bias"));
      }
      auto values = p.contains("face_values") ? detail::number_list(p["face_values"], pw + ".face_values")
                                              : PushYourLuck::default_values(faces);
      return ScaledModel(PushYourLuck(std::move(bias), std::move(values), horizon), factor);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  } catch (const json::exception& e) {
    throw ConfigError(pw, e.what());
  }
  throw ConfigError(where + ".name", "unknown environment '" + spec.name + "'");
}

inline int num_players(const AnyModel& model) {
  return std::visit([](const auto& m) { return m.num_players(); }, model);
}

/// An agent entry of the config, expanded over its C values.
inline std::vector<AgentSpec> parse_agents(const json& j, const std::string& where) {
  std::vector<AgentSpec> out;
  std::string name;
  json c_value = 2.0;
  if (j.is_string()) {
    name = j.get<std::string>();
  } else {
    detail::check_keys(j, where, {"strategy", "C"});
    if (!j.contains("strategy") || !j["strategy"].is_string())
      throw ConfigError(where + ".strategy", "missing strategy name");
    name = j["strategy"].get<std::string>();
    if (j.contains("C")) c_value = j["C"];
  }
  if (name == "random") return {AgentSpec::uniform_random()};
  const auto kind = parse_strategy(name);
  if (!kind) throw ConfigError(where + ".strategy", "unknown strategy '" + name + "'");
  const auto cs = (c_value.is_string() && c_value.get<std::string>() == "grid")
                      ? kDefaultCGrid
                      : detail::number_list(c_value, where + ".C");
  for (double c : cs) {
    if (!(c > 0.0)) throw ConfigError(where + ".C", "C must be > 0");
    out.push_back(AgentSpec::mcts(LambdaStrategy(*kind, c), 1));
  }
  return out;
}

inline AgentSpec parse_single_agent(const json& j, const std::string& where, int default_iterations) {
  if (!j.is_object()) throw ConfigError(where, "expected an object");
  json copy = j;
  const int iterations = detail::positive_int(copy, "iterations", default_iterations, where);
  copy.erase("iterations");
  auto agents = parse_agents(copy, where);
  if (agents.size() != 1) throw ConfigError(where + ".C", "expected a single C value");
  agents[0].iterations = iterations;
  return agents[0];
}

struct ScaleTestConfig {
  EnvironmentSpec environment;
  std::vector<AgentSpec> agents;
  std::vector<double> mu;
};

struct ExperimentConfig {
  std::uint64_t seed = 42;
  int episodes = 200;
  int games_per_side = 100;
  int planning_horizon = 50;
  std::vector<int> iterations = {100};
  std::vector<EnvironmentSpec> environments;
  std::vector<AgentSpec> agents;
  AgentSpec opponent = AgentSpec::mcts(LambdaStrategy(StrategyKind::kGlobalStd, 4.0), 500);
  std::optional<ScaleTestConfig> scale_test;
  std::string output = "results";
  int jobs = 1;
};

inline ExperimentConfig parse_config(const json& j) {
  const std::string root = "config";
  detail::check_keys(j, root,
                     {"seed", "episodes", "games_per_side", "planning_horizon", "iterations",
                      "environments", "agents", "opponent", "scale_test", "output"});
  ExperimentConfig cfg;
  cfg.seed = detail::get_or<std::uint64_t>(j, "seed", 42, root);
  cfg.episodes = detail::positive_int(j, "episodes", 200, root);
  cfg.games_per_side = detail::positive_int(j, "games_per_side", 100, root);
  cfg.planning_horizon = detail::positive_int(j, "planning_horizon", 50, root);
  cfg.output = detail::get_or<std::string>(j, "output", "results", root);

  if (j.contains("iterations")) {
    cfg.iterations.clear();
    for (double v : detail::number_list(j["iterations"], root + ".iterations")) {
      if (v < 1 || v != static_cast<int>(v)) throw ConfigError(root + ".iterations", "budgets must be integers >= 1");
      cfg.iterations.push_back(static_cast<int>(v));
    }
  }

  if (j.contains("environments")) {
    if (!j["environments"].is_array()) throw ConfigError(root + ".environments", "expected a list");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < j["environments"].size(); ++i) {
      const auto where = root + ".environments[" + std::to_string(i) + "]";
      auto spec = parse_environment(j["environments"][i], where);
      make_model(spec, 1.0, where);  // validates parameters
      if (!labels.insert(spec.label).second) throw ConfigError(where + ".label", "duplicate label '" + spec.label + "'");
      cfg.environments.push_back(std::move(spec));
    }
  }

  if (j.contains("agents")) {
    if (!j["agents"].is_array()) throw ConfigError(root + ".agents", "expected a list");
    std::set<std::string> names;
    for (std::size_t i = 0; i < j["agents"].size(); ++i) {
      const auto where = root + ".agents[" + std::to_string(i) + "]";
      for (auto& agent : parse_agents(j["agents"][i], where)) {
        if (!names.insert(agent.name).second) throw ConfigError(where, "duplicate agent '" + agent.name + "'");
        cfg.agents.push_back(std::move(agent));
      }
    }
  }

  if (j.contains("opponent")) cfg.opponent = parse_single_agent(j["opponent"], root + ".opponent", 500);

  if (j.contains("scale_test")) {
    const auto where = root + ".scale_test";
    const json& st = j["scale_test"];
    detail::check_keys(st, where, {"environment", "agents", "mu", "iterations"});
    ScaleTestConfig sc;
    if (!st.contains("environment")) throw ConfigError(where + ".environment", "missing");
    sc.environment = parse_environment(st["environment"], where + ".environment");
    make_model(sc.environment, 1.0, where + ".environment");
    const int iterations = detail::positive_int(st, "iterations", 500, where);
    if (!st.contains("agents") || !st["agents"].is_array()) throw ConfigError(where + ".agents", "expected a list");
    for (std::size_t i = 0; i < st["agents"].size(); ++i) {
      const auto aw = where + ".agents[" + std::to_string(i) + "]";
      for (auto& agent : parse_agents(st["agents"][i], aw)) {
        agent.iterations = iterations;
        sc.agents.push_back(std::move(agent));
      }
    }
    sc.mu = st.contains("mu") ? detail::number_list(st["mu"], where + ".mu") : std::vector<double>{1.0};
    for (double mu : sc.mu)
      if (!(mu > 0.0)) throw ConfigError(where + ".mu", "every mu must be > 0");
    cfg.scale_test = std::move(sc);
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string(), e.what());
  }
  return parse_config(j);
}

inline std::string task_name(const EnvironmentSpec& env, int iterations) {
  return env.label + "@" + std::to_string(iterations);
}

/// One (agent, task) evaluation of a tournament.
struct CellPlan {
  std::size_t agent;
  std::size_t environment;
  int iterations;
};

inline std::vector<CellPlan> plan_cells(const ExperimentConfig& cfg) {
  std::vector<CellPlan> plan;
  for (std::size_t e = 0; e < cfg.environments.size(); ++e)
    for (int budget : cfg.iterations)
      for (std::size_t a = 0; a < cfg.agents.size(); ++a) plan.push_back({a, e, budget});
  return plan;
}

struct ResultRow {
  std::string agent;
  std::string strategy;
  std::string c;
  std::string task;
  std::string environment;
  int iterations = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t episodes = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kResultsHeader =
    "agent,strategy,C,task,environment,iterations,mean,stderr,episodes,seed";

inline std::string format_number(double v) { return fmt::format("{}", v); }

inline std::string to_csv(const ResultRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{}", r.agent, r.strategy, r.c, r.task,
                     r.environment, r.iterations, format_number(r.mean),
                     format_number(r.std_error), r.episodes, r.seed);
}

/// Evaluates one agent on one model: episodes for single-player models,
/// games against the fixed opponent (both seats) for two-player ones.
inline EvaluationResult evaluate_cell(const AnyModel& model, const AgentSpec& agent,
                                      const ExperimentConfig& cfg) {
  const EvalOptions options{cfg.planning_horizon, cfg.jobs};
  return std::visit(
      [&](const auto& m) {
        if (m.num_players() == 1) return evaluate_single_player(m, agent, cfg.episodes, cfg.seed, options);
        return head_to_head(m, agent, cfg.opponent, cfg.games_per_side, cfg.seed, options);
      },
      model);
}

inline std::string agent_strategy(const AgentSpec& a) {
  return a.random ? "random" : std::string(a.strategy.name());
}
inline std::string agent_c(const AgentSpec& a) {
  return a.random ? "" : AgentSpec::format_c(a.strategy.C);
}

inline void write_lines(const std::filesystem::path& path, const std::string& header,
                        const std::vector<std::string>& lines) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << header << '\n';
  for (const auto& line : lines) out << line << '\n';
}

/// Evaluates every (agent, task) cell and writes `<output>/results.csv`.
inline std::vector<ResultRow> cmd_run(const ExperimentConfig& cfg, std::ostream* log = nullptr) {
  if (cfg.environments.empty()) throw ConfigError("config.environments", "no environments to run");
  if (cfg.agents.empty()) throw ConfigError("config.agents", "no agents to run");
  std::vector<AnyModel> models;
  for (std::size_t e = 0; e < cfg.environments.size(); ++e)
    models.push_back(make_model(cfg.environments[e], 1.0, "config.environments[" + std::to_string(e) + "]"));

  std::vector<ResultRow> rows;
  std::vector<std::string> lines;
  for (const auto& cell : plan_cells(cfg)) {
    AgentSpec agent = cfg.agents[cell.agent];
    agent.iterations = cell.iterations;
    const auto& env = cfg.environments[cell.environment];
    const auto result = evaluate_cell(models[cell.environment], agent, cfg);
    ResultRow row{agent.name,
                  agent_strategy(agent),
                  agent_c(agent),
                  task_name(env, cell.iterations),
                  env.label,
                  cell.iterations,
                  result.estimate.mean,
                  result.estimate.std_error,
                  result.estimate.count,
                  cfg.seed};
    if (log) *log << fmt::format("{:<24} {:<24} {:+.4f} +- {:.4f}\n", row.task, row.agent, row.mean,
                                 result.estimate.ci99);
    lines.push_back(to_csv(row));
    rows.push_back(std::move(row));
  }
  write_lines(std::filesystem::path(cfg.output) / "results.csv", kResultsHeader, lines);
  return rows;
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace detail

inline std::vector<ResultRow> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open results file");
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader)
    throw ConfigError(path.string() + ":1", "unexpected header, expected '" + std::string(kResultsHeader) + "'");
  std::vector<ResultRow> rows;
  for (int lineno = 2; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    const auto where = path.string() + ":" + std::to_string(lineno);
    if (f.size() != 10) throw ConfigError(where, "expected 10 fields");
    try {
      rows.push_back({f[0], f[1], f[2], f[3], f[4], std::stoi(f[5]), std::stod(f[6]), std::stod(f[7]),
                      std::stoll(f[8]), std::stoull(f[9])});
    } catch (const std::exception&) {
      throw ConfigError(where, "malformed number");
    }
  }
  return rows;
}

/// Pairings matrices per iteration budget and over all tasks.
struct ScoreReport {
  struct Scope {
    std::string name;  // budget or "all"
    PairingsMatrix matrix;
    std::vector<double> scores;
  };
  std::vector<Scope> scopes;
};

/// With `best_over_c`, agents are strategies and each task uses a strategy's
/// best mean over its C values.
inline PerformanceTable build_table(const std::vector<ResultRow>& rows, bool best_over_c) {
  PerformanceTable table;
  for (const auto& r : rows) {
    const std::string agent = best_over_c ? r.strategy : r.agent;
    if (best_over_c && table.contains(agent, r.task) && table.at(agent, r.task).mean >= r.mean) continue;
    table.set(agent, r.task, {r.mean, r.std_error, r.episodes});
  }
  return table;
}

inline ScoreReport score_results(const std::vector<ResultRow>& rows, bool best_over_c = false) {
  const auto table = build_table(rows, best_over_c);
  if (table.agents().size() < 2) throw ConfigError("results", "scoring needs at least two agents");
  std::map<int, std::vector<std::string>> by_budget;
  for (const auto& r : rows) {
    auto& tasks = by_budget[r.iterations];
    if (std::find(tasks.begin(), tasks.end(), r.task) == tasks.end()) tasks.push_back(r.task);
  }
  ScoreReport report;
  for (const auto& [budget, tasks] : by_budget) {
    auto m = pairings_matrix(table, tasks);
    auto s = normalized_pairings_score(m);
    report.scopes.push_back({std::to_string(budget), std::move(m), std::move(s)});
  }
  auto m = pairings_matrix(table);
  auto s = normalized_pairings_score(m);
  report.scopes.push_back({"all", std::move(m), std::move(s)});
  return report;
}

/// Writes `pairings_<scope>.csv` for every scope and a ranked `scores.csv`.
inline ScoreReport cmd_score(const std::filesystem::path& results, const std::filesystem::path& out_dir,
                             bool best_over_c = false, std::ostream* log = nullptr) {
  auto report = score_results(read_results(results), best_over_c);
  std::vector<std::string> score_lines;
  for (const auto& scope : report.scopes) {
    const auto& m = scope.matrix;
    std::string header;
    for (const auto& a : m.agents) header += "," + a;
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::string line = m.agents[i];
      for (std::size_t j = 0; j < m.size(); ++j) line += "," + format_number(m(i, j));
      lines.push_back(std::move(line));
    }
    write_lines(out_dir / ("pairings_" + scope.name + ".csv"), header, lines);

    std::vector<std::size_t> order(m.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scope.scores[a] > scope.scores[b]; });
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      score_lines.push_back(fmt::format("{},{},{},{}", scope.name, rank + 1, m.agents[order[rank]],
                                        format_number(scope.scores[order[rank]])));
      if (log && scope.name == "all")
        *log << fmt::format("{:>3}  {:<28} {:+.3f}\n", rank + 1, m.agents[order[rank]], scope.scores[order[rank]]);
    }
  }
  write_lines(out_dir / "scores.csv", "scope,rank,agent,score", score_lines);
  return report;
}

struct ScaleRow {
  std::string agent;
  std::string strategy;
  std::string c;
  std::string environment;
  int iterations = 0;
  double mu = 1.0;
  double mean = 0.0;
  double std_error = 0.0;
  double normalized_mean = 0.0;
  double normalized_ci99 = 0.0;
  std::int64_t episodes = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kScaleHeader =
    "agent,strategy,C,environment,iterations,mu,mean,stderr,normalized_mean,normalized_ci99,episodes,seed";

/// For each mu, evaluates every scale-test agent on the environment with
/// rewards multiplied by mu and reports mean / mu. Writes `<output>/scale_test.csv`.
inline std::vector<ScaleRow> cmd_scale_test(const ExperimentConfig& cfg, std::ostream* log = nullptr) {
  if (!cfg.scale_test) throw ConfigError("config.scale_test", "missing scale_test section");
  const auto& st = *cfg.scale_test;
  if (st.agents.empty()) throw ConfigError("config.scale_test.agents", "no agents");
  std::vector<ScaleRow> rows;
  std::vector<std::string> lines;
  for (const auto& agent : st.agents) {
    for (double mu : st.mu) {
      if (!(mu > 0.0)) throw ConfigError("config.scale_test.mu", "every mu must be > 0");
      const auto model = make_model(st.environment, mu, "config.scale_test.environment");
      // The fixed opponent plays on the same scaled rewards.
      const auto result = evaluate_cell(model, agent, cfg);
      ScaleRow row{agent.name, agent_strategy(agent), agent_c(agent), st.environment.label,
                   agent.iterations, mu, result.estimate.mean, result.estimate.std_error,
                   result.estimate.mean / mu, result.estimate.ci99 / mu, result.estimate.count, cfg.seed};
      if (log) *log << fmt::format("{:<24} mu={:<8} {:+.4f} +- {:.4f}\n", row.agent, format_number(mu),
                                   row.normalized_mean, row.normalized_ci99);
      lines.push_back(fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}", row.agent, row.strategy, row.c,
                                  row.environment, row.iterations, format_number(mu),
                                  format_number(row.mean), format_number(row.std_error),
                                  format_number(row.normalized_mean), format_number(row.normalized_ci99),
                                  row.episodes, row.seed));
      rows.push_back(std::move(row));
    }
  }
  write_lines(std::filesystem::path(cfg.output) / "scale_test.csv", kScaleHeader, lines);
  return rows;
}

}  // namespace uct_lambda
