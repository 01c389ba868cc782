#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uct_lambda/game.hpp"

namespace uct_lambda {

/// Single-agent grid walk from the bottom-left to the bottom-right corner.
/// Moving away from a tile sends the robot back to the start with that tile's
/// reset probability. Every step costs -1; reaching the goal ends the episode.
/// Actions: 0 up, 1 down, 2 left, 3 right (off-grid moves are not legal).
class Navigation {
 public:
  struct State {
    std::int16_t row = 0;
    std::int16_t col = 0;

    std::size_t hash() const {
      return static_cast<std::size_t>(row) << 16 | static_cast<std::size_t>(col);
    }
    friend bool operator==(const State&, const State&) = default;
  };

  /// Default instance: reset probability grows linearly from 0 in the first
  /// column to `max_reset` in the last one.
  explicit Navigation(int rows = 10, int cols = 10, double max_reset = 0.5, int horizon = 50)
      : Navigation(rows, cols, linear_table(rows, cols, max_reset), horizon) {}

  Navigation(int rows, int cols, std::vector<double> reset_probs, int horizon = 50)
      : rows_(rows), cols_(cols), reset_(std::move(reset_probs)), horizon_(horizon) {
    if (rows < 1 || cols < 2) throw std::invalid_argument("navigation: need rows >= 1, cols >= 2");
    if (reset_.size() != static_cast<std::size_t>(rows * cols))
      throw std::invalid_argument("navigation: reset table must have rows*cols entries");
    for (double p : reset_)
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("navigation: reset probabilities must lie in [0, 1]");
  }

  static std::vector<double> linear_table(int rows, int cols, double max_reset) {
    std::vector<double> table(static_cast<std::size_t>(rows * std::max(cols, 0)));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        table[r * cols + c] = cols > 1 ? max_reset * c / (cols - 1) : 0.0;
    return table;
  }

  std::string name() const { return "navigation"; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int num_players() const { return 1; }
  int max_horizon() const { return horizon_; }
  double discount() const { return 1.0; }
  double reset_probability(int row, int col) const { return reset_[row * cols_ + col]; }

  State start() const { return State{static_cast<std::int16_t>(rows_ - 1), 0}; }
  State goal() const {
    return State{static_cast<std::int16_t>(rows_ - 1), static_cast<std::int16_t>(cols_ - 1)};
  }

  State initial_state(Rng&) const { return start(); }
  bool is_terminal(const State& s) const { return s == goal(); }
  int to_move(const State&) const { return 0; }

  void legal_actions(const State& s, std::vector<Action>& out) const {
    out.clear();
    if (is_terminal(s)) return;
    for (int d = 0; d < 4; ++d)
      if (in_bounds(moved(s, d))) out.push_back(d);
  }

  Transition<State> step(const State& s, Action a, Rng& rng) const {
    if (a < 0 || a >= 4 || is_terminal(s) || !in_bounds(moved(s, a)))
      throw_illegal_action(*this, s, a);
    const bool reset = rng.uniform01() < reset_probability(s.row, s.col);
    return {reset ? start() : moved(s, a), RewardVector{-1.0}};
  }

  std::string describe(const State& s) const {
    return "(" + std::to_string(s.row) + "," + std::to_string(s.col) + ")";
  }

 private:
  static State moved(State s, int direction) {
    switch (direction) {
      case 0: --s.row; break;
      case 1: ++s.row; break;
      case 2: --s.col; break;
      default: ++s.col; break;
    }
    return s;
  }
  bool in_bounds(const State& s) const {
    return s.row >= 0 && s.row < rows_ && s.col >= 0 && s.col < cols_;
  }

  int rows_;
  int cols_;
  std::vector<double> reset_;
  int horizon_;
};

}  // namespace uct_lambda
