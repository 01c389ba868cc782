#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uct_lambda/env/tictactoe.hpp"
#include "uct_lambda/game.hpp"

namespace uct_lambda {

/// Players alternately add an integer in [1, max_pick] to a running sum.
/// Hitting the goal exactly wins; overshooting it loses. Action `a` adds `a`.
class NumbersRace {
 public:
  struct State {
    int sum = 0;
    std::int8_t to_move = 0;

    std::size_t hash() const {
      return static_cast<std::size_t>(sum) * 2 + static_cast<std::size_t>(to_move);
    }
    friend bool operator==(const State&, const State&) = default;
  };

  explicit NumbersRace(int max_pick = 9, int goal = 50, int horizon = 200)
      : max_pick_(max_pick), goal_(goal), horizon_(horizon) {
    if (max_pick < 1 || goal < 1)
      throw std::invalid_argument("numbers_race: max_pick and goal must be >= 1");
  }

  std::string name() const { return "numbers_race"; }
  int max_pick() const { return max_pick_; }
  int goal() const { return goal_; }
  int num_players() const { return 2; }
  int max_horizon() const { return horizon_; }
  double discount() const { return 1.0; }

  State initial_state(Rng&) const { return State{}; }

  /// The last mover is the opponent of `to_move`; they either hit or overshot.
  Outcome winner(const State& s) const {
    if (s.sum < goal_) return Outcome::kOngoing;
    const int last_mover = 1 - s.to_move;
    const int won = s.sum == goal_ ? last_mover : s.to_move;
    return won == 0 ? Outcome::kPlayer1 : Outcome::kPlayer2;
  }

  bool is_terminal(const State& s) const { return s.sum >= goal_; }
  int to_move(const State& s) const { return s.to_move; }

  void legal_actions(const State& s, std::vector<Action>& out) const {
    out.clear();
    if (is_terminal(s)) return;
    for (int pick = 1; pick <= max_pick_; ++pick) out.push_back(pick);
  }

  Transition<State> step(const State& s, Action a, Rng&) const {
    if (a < 1 || a > max_pick_ || is_terminal(s)) throw_illegal_action(*this, s, a);
    const int mover = s.to_move;
    Transition<State> t{State{s.sum + a, static_cast<std::int8_t>(1 - mover)}, RewardVector(2)};
    if (t.state.sum == goal_) t.reward = win_reward(mover);
    else if (t.state.sum > goal_) t.reward = win_reward(1 - mover);
    return t;
  }

  std::string describe(const State& s) const {
    return "sum=" + std::to_string(s.sum) + "/" + std::to_string(goal_) +
           " to_move=" + std::to_string(s.to_move + 1);
  }

 private:
  int max_pick_;
  int goal_;
  int horizon_;
};

}  // namespace uct_lambda
