#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "uct_lambda/game.hpp"
#include "uct_lambda/rng.hpp"

namespace uct_lambda {

/// Chooses an action for the player to move. `steps_remaining` is the number
/// of episode steps left including this one.
template <GameModel M>
using Policy = std::function<Action(const typename M::State&, int steps_remaining, Rng&)>;

struct EpisodeRecord {
  RewardVector returns;
  int steps = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

template <GameModel M>
struct Trajectory {
  std::vector<typename M::State> states;
  std::vector<Action> actions;
  std::vector<RewardVector> rewards;
};

template <GameModel M>
Policy<M> uniform_random_policy(const M& model) {
  return [&model, actions = std::vector<Action>{}](const typename M::State& state, int,
                                                   Rng& rng) mutable {
    model.legal_actions(state, actions);
    return actions[rng.uniform_int(actions.size())];
  };
}

/// Plays one episode until a terminal state or `horizon` steps. Policy `i`
/// acts for player `i`. Deterministic in `seed`.
template <GameModel M>
EpisodeRecord run_episode(const M& model, std::span<const Policy<M>> policies, int horizon,
                          double gamma, std::uint64_t seed, Trajectory<M>* log = nullptr) {
  if (horizon < 1) throw std::invalid_argument("run_episode: horizon must be >= 1");
  if (static_cast<int>(policies.size()) != model.num_players())
    throw std::invalid_argument("run_episode: need one policy per player");

  Rng rng(seed);
  EpisodeRecord record{RewardVector(model.num_players()), 0, seed};
  auto state = model.initial_state(rng);
  double discount = 1.0;
  while (record.steps < horizon && !model.is_terminal(state)) {
    const int player = model.to_move(state);
    const Action action = policies[player](state, horizon - record.steps, rng);
    auto next = model.step(state, action, rng);
    record.returns.add_scaled(next.reward, discount);
    if (log != nullptr) {
      log->states.push_back(state);
      log->actions.push_back(action);
      log->rewards.push_back(next.reward);
    }
    state = std::move(next.state);
    discount *= gamma;
    ++record.steps;
  }
  if (log != nullptr) log->states.push_back(state);
  return record;
}

}  // namespace uct_lambda
