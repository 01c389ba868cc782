#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "uct_lambda/game.hpp"

namespace uct_lambda {

/// +1 for `winner`, -1 for the other seat of a two-player zero-sum game.
inline RewardVector win_reward(int winner) {
  return winner == 0 ? RewardVector{1.0, -1.0} : RewardVector{-1.0, 1.0};
}

/// Noughts and crosses on a 3x3 grid. Cells hold 0 (empty), 1 (P1) or 2 (P2);
/// actions are cell indices 0..8 in row-major order.
class TicTacToe {
 public:
  struct State {
    std::array<std::int8_t, 9> cells{};
    std::int8_t to_move = 0;

    std::size_t hash() const {
      std::size_t h = static_cast<std::size_t>(to_move);
      for (auto c : cells) h = h * 3 + static_cast<std::size_t>(c);
      return h;
    }
    friend bool operator==(const State&, const State&) = default;
  };

  explicit TicTacToe(int horizon = 200) : horizon_(horizon) {}

  std::string name() const { return "tictactoe"; }
  int num_players() const { return 2; }
  int max_horizon() const { return horizon_; }
  double discount() const { return 1.0; }

  State initial_state(Rng&) const { return State{}; }

  static Outcome winner(const State& s) {
    static constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                         {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
    for (const auto& line : kLines) {
      const auto c = s.cells[line[0]];
      if (c != 0 && c == s.cells[line[1]] && c == s.cells[line[2]])
        return c == 1 ? Outcome::kPlayer1 : Outcome::kPlayer2;
    }
    for (auto c : s.cells)
      if (c == 0) return Outcome::kOngoing;
    return Outcome::kDraw;
  }

  bool is_terminal(const State& s) const { return winner(s) != Outcome::kOngoing; }
  int to_move(const State& s) const { return s.to_move; }

  void legal_actions(const State& s, std::vector<Action>& out) const {
    out.clear();
    if (is_terminal(s)) return;
    for (int i = 0; i < 9; ++i)
      if (s.cells[i] == 0) out.push_back(i);
  }

  Transition<State> step(const State& s, Action a, Rng&) const {
    if (a < 0 || a >= 9 || s.cells[a] != 0 || is_terminal(s)) throw_illegal_action(*this, s, a);
    Transition<State> t{s, RewardVector(2)};
    const int mover = s.to_move;
    t.state.cells[a] = static_cast<std::int8_t>(mover + 1);
    t.state.to_move = static_cast<std::int8_t>(1 - mover);
    const auto w = winner(t.state);
    if (w == Outcome::kPlayer1 || w == Outcome::kPlayer2) t.reward = win_reward(mover);
    return t;
  }

  std::string describe(const State& s) const {
    std::string out;
    for (int i = 0; i < 9; ++i) out += ".XO"[s.cells[i]];
    out += " to_move=" + std::to_string(s.to_move + 1);
    return out;
  }

 private:
  int horizon_;
};

}  // namespace uct_lambda
