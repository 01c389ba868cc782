#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "uct_lambda/game.hpp"

namespace uct_lambda {

/// Wraps a model and multiplies every emitted reward by `mu > 0`. Successor
/// sampling is delegated untouched, so the same Rng stream yields the same
/// states as the inner model.
template <GameModel Inner>
class ScaledModel {
 public:
  using State = typename Inner::State;

  ScaledModel(Inner inner, double mu) : inner_(std::move(inner)), mu_(mu) {
    if (!(mu > 0.0) || !std::isfinite(mu))
      throw std::invalid_argument("scaled model: mu must be a positive finite number");
  }

  const Inner& inner() const { return inner_; }
  double mu() const { return mu_; }

  std::string name() const { return inner_.name(); }
  int num_players() const { return inner_.num_players(); }
  int max_horizon() const { return inner_.max_horizon(); }
  double discount() const { return inner_.discount(); }
  State initial_state(Rng& rng) const { return inner_.initial_state(rng); }
  bool is_terminal(const State& s) const { return inner_.is_terminal(s); }
  int to_move(const State& s) const { return inner_.to_move(s); }
  void legal_actions(const State& s, std::vector<Action>& out) const {
    inner_.legal_actions(s, out);
  }
  std::string describe(const State& s) const { return inner_.describe(s); }

  Transition<State> step(const State& s, Action a, Rng& rng) const {
    auto t = inner_.step(s, a, rng);
    t.reward *= mu_;
    return t;
  }

 private:
  Inner inner_;
  double mu_;
};

}  // namespace uct_lambda
