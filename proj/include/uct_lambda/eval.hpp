#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "uct_lambda/episode.hpp"
#include "uct_lambda/game.hpp"
#include "uct_lambda/lambda.hpp"
#include "uct_lambda/mcts.hpp"

namespace uct_lambda {

/// z-multiplier of the standard error for the reported 99% intervals.
inline constexpr double kCi99Factor = 2.33;

/// Evaluates `fn(i)` for i in [0, count) on up to `jobs` threads and returns
/// the results in index order. The first failing index's exception is rethrown.
template <class Fn>
auto parallel_map(std::size_t count, int jobs, Fn&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, jobs));
  if (threads == 1 || count < 2) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(threads, count); ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline int default_jobs() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Mean with sample standard error and the 2.33 * SE interval.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci99 = 0.0;
  std::int64_t count = 0;
};

inline Estimate summarize(std::span<const double> values) {
  Estimate e;
  e.count = static_cast<std::int64_t>(values.size());
  if (values.empty()) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    const double sample_var = ss / static_cast<double>(values.size() - 1);
    e.std_error = std::sqrt(sample_var / static_cast<double>(values.size()));
  }
  e.ci99 = kCi99Factor * e.std_error;
  return e;
}

/// An MCTS agent (or the uniform-random baseline).
struct AgentSpec {
  std::string name;
  bool random = false;
  LambdaStrategy strategy;
  int iterations = 100;

  static AgentSpec mcts(LambdaStrategy strategy, int iterations) {
    AgentSpec a;
    a.strategy = strategy;
    a.iterations = iterations;
    a.name = std::string(strategy.name()) + ":C=" + format_c(strategy.C);
    return a;
  }

  static AgentSpec uniform_random() {
    AgentSpec a;
    a.random = true;
    a.name = "random";
    return a;
  }

  /// Shortest round-tripping decimal form, e.g. 0.125 or 2.
  static std::string format_c(double c) { return fmt::format("{}", c); }
};

struct EvalOptions {
  /// Upper bound on each search's lookahead; also capped by the steps left in the episode.
  int planning_horizon = 50;
  int jobs = 1;
};

template <GameModel M>
Policy<M> make_policy(const M& model, const AgentSpec& agent, int planning_horizon) {
  if (agent.random) return uniform_random_policy(model);
  SearchConfig config;
  config.iterations = agent.iterations;
  config.planning_horizon = planning_horizon;
  config.discount = model.discount();
  config.strategy = agent.strategy;
  config.validate();
  return [&model, config](const typename M::State& state, int steps_remaining, Rng& rng) {
    SearchConfig c = config;
    c.planning_horizon = std::min(c.planning_horizon, steps_remaining);
    return search(model, state, c, rng);
  };
}

struct EvaluationResult {
  Estimate estimate;
  std::vector<double> returns;
};

/// Mean episode return of a single-player agent. Episode k replays substream k of `seed`.
template <GameModel M>
EvaluationResult evaluate_single_player(const M& model, const AgentSpec& agent, int episodes,
                                        std::uint64_t seed, const EvalOptions& options = {}) {
  if (model.num_players() != 1)
    throw std::invalid_argument("evaluate_single_player: model has more than one player");
  if (episodes < 2) throw std::invalid_argument("evaluate_single_player: need >= 2 episodes");
  auto returns = parallel_map(static_cast<std::size_t>(episodes), options.jobs, [&](std::size_t k) {
    const std::vector<Policy<M>> policies{make_policy(model, agent, options.planning_horizon)};
    const auto record = run_episode<M>(model, policies, model.max_horizon(), model.discount(),
                                       Rng::substream(seed, k).seed());
    return record.returns[0];
  });
  return {summarize(returns), std::move(returns)};
}

/// Mean return of `candidate` over `games_per_side` games as first mover
/// followed by as many as second mover. Game k replays substream k of `seed`.
template <GameModel M>
EvaluationResult head_to_head(const M& model, const AgentSpec& candidate,
                              const AgentSpec& opponent, int games_per_side, std::uint64_t seed,
                              const EvalOptions& options = {}) {
  if (model.num_players() != 2) throw std::invalid_argument("head_to_head: model is not two-player");
  if (games_per_side < 1) throw std::invalid_argument("head_to_head: need >= 1 game per side");
  const auto games = static_cast<std::size_t>(2 * games_per_side);
  auto returns = parallel_map(games, options.jobs, [&](std::size_t k) {
    const int seat = k < static_cast<std::size_t>(games_per_side) ? 0 : 1;
    std::vector<Policy<M>> policies(2);
    policies[seat] = make_policy(model, candidate, options.planning_horizon);
    policies[1 - seat] = make_policy(model, opponent, options.planning_horizon);
    const auto record = run_episode<M>(model, policies, model.max_horizon(), model.discount(),
                                       Rng::substream(seed, k).seed());
    return record.returns[seat];
  });
  return {summarize(returns), std::move(returns)};
}

class MissingCellError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mean return per (agent, task). Agents and tasks keep first-insertion order.
class PerformanceTable {
 public:
  struct Cell {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t episodes = 0;
  };

  void set(const std::string& agent, const std::string& task, Cell cell) {
    if (std::find(agents_.begin(), agents_.end(), agent) == agents_.end()) agents_.push_back(agent);
    if (std::find(tasks_.begin(), tasks_.end(), task) == tasks_.end()) tasks_.push_back(task);
    cells_[{agent, task}] = cell;
  }

  const Cell& at(const std::string& agent, const std::string& task) const {
    auto it = cells_.find({agent, task});
    if (it == cells_.end())
      throw MissingCellError("no result for agent '" + agent + "' on task '" + task + "'");
    return it->second;
  }

  bool contains(const std::string& agent, const std::string& task) const {
    return cells_.count({agent, task}) > 0;
  }

  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<std::string>& tasks() const { return tasks_; }

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> tasks_;
  std::map<std::pair<std::string, std::string>, Cell> cells_;
};

/// Entry (i, j): tasks where agent i beat agent j minus tasks where it lost, over m.
struct PairingsMatrix {
  std::vector<std::string> agents;
  std::vector<std::vector<double>> values;
  int tasks = 0;

  std::size_t size() const { return agents.size(); }
  double operator()(std::size_t i, std::size_t j) const { return values[i][j]; }
};

/// Builds the pairings matrix over `tasks` (all tables tasks when empty).
/// Exactly equal means count as a tie.
inline PairingsMatrix pairings_matrix(const PerformanceTable& table,
                                      std::vector<std::string> tasks = {}) {
  if (tasks.empty()) tasks = table.tasks();
  const auto& agents = table.agents();
  const std::size_t n = agents.size();
  if (tasks.empty()) throw std::invalid_argument("pairings_matrix: no tasks");

  std::vector<std::string> missing;
  for (const auto& a : agents)
    for (const auto& t : tasks)
      if (!table.contains(a, t)) missing.push_back(a + " @ " + t);
  if (!missing.empty()) {
    std::string msg = "pairings_matrix: missing cells:";
    for (const auto& m : missing) msg += " [" + m + "]";
    throw MissingCellError(msg);
  }

  PairingsMatrix out{agents, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)),
                     static_cast<int>(tasks.size())};
  const auto m = static_cast<double>(tasks.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      int balance = 0;
      for (const auto& t : tasks) {
        const double a = table.at(agents[i], t).mean;
        const double b = table.at(agents[j], t).mean;
        balance += (a > b) - (a < b);
      }
      out.values[i][j] = balance / m;
      out.values[j][i] = -balance / m;
    }
  }
  return out;
}

/// Row mean of the pairings matrix, excluding the diagonal.
inline std::vector<double> normalized_pairings_score(const PairingsMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (n < 2) throw std::invalid_argument("normalized_pairings_score: need at least two agents");
  std::vector<double> scores(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sum += matrix(i, j);
    scores[i] = sum / static_cast<double>(n - 1);
  }
  return scores;
}

}  // namespace uct_lambda
