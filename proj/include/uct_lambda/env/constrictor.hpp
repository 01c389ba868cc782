#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uct_lambda/env/tictactoe.hpp"
#include "uct_lambda/game.hpp"

namespace uct_lambda {

/// Two snakes on an n x n grid, each extending its head into an unvisited
/// 4-neighbour cell. The player to move with no such cell has lost.
/// Actions: 0 up, 1 down, 2 left, 3 right.
class Constrictor {
 public:
  static constexpr int kMaxSize = 8;

  struct State {
    std::uint64_t visited = 0;
    std::array<std::int8_t, 2> heads{};
    std::int8_t to_move = 0;

    std::size_t hash() const {
      return hash_combine(visited, static_cast<std::size_t>(heads[0] | (heads[1] << 8) |
                                                            (to_move << 16)));
    }
    friend bool operator==(const State&, const State&) = default;
  };

  explicit Constrictor(int size = 7, int horizon = 200) : size_(size), horizon_(horizon) {
    if (size < 2 || size > kMaxSize)
      throw std::invalid_argument("constrictor: size must be in [2, 8]");
  }

  std::string name() const { return "constrictor"; }
  int size() const { return size_; }
  int num_players() const { return 2; }
  int max_horizon() const { return horizon_; }
  double discount() const { return 1.0; }

  /// P1 starts in the top-left corner, P2 in the bottom-right one.
  State initial_state(Rng&) const {
    State s;
    s.heads = {0, static_cast<std::int8_t>(size_ * size_ - 1)};
    s.visited = bit(s.heads[0]) | bit(s.heads[1]);
    return s;
  }

  /// Target cell of moving `cell` in `direction`, or -1 when off the board.
  int neighbour(int cell, int direction) const {
    const int r = cell / size_, c = cell % size_;
    switch (direction) {
      case 0: return r > 0 ? cell - size_ : -1;
      case 1: return r + 1 < size_ ? cell + size_ : -1;
      case 2: return c > 0 ? cell - 1 : -1;
      case 3: return c + 1 < size_ ? cell + 1 : -1;
      default: return -1;
    }
  }

  bool can_move(const State& s, int player) const {
    for (int d = 0; d < 4; ++d) {
      const int n = neighbour(s.heads[player], d);
      if (n >= 0 && !(s.visited & bit(n))) return true;
    }
    return false;
  }

  Outcome winner(const State& s) const {
    if (can_move(s, s.to_move)) return Outcome::kOngoing;
    return s.to_move == 0 ? Outcome::kPlayer2 : Outcome::kPlayer1;
  }

  bool is_terminal(const State& s) const { return !can_move(s, s.to_move); }
  int to_move(const State& s) const { return s.to_move; }

  void legal_actions(const State& s, std::vector<Action>& out) const {
    out.clear();
    for (int d = 0; d < 4; ++d) {
      const int n = neighbour(s.heads[s.to_move], d);
      if (n >= 0 && !(s.visited & bit(n))) out.push_back(d);
    }
  }

  Transition<State> step(const State& s, Action a, Rng&) const {
    const int mover = s.to_move;
    const int target = (a >= 0 && a < 4) ? neighbour(s.heads[mover], a) : -1;
    if (target < 0 || (s.visited & bit(target))) throw_illegal_action(*this, s, a);
    Transition<State> t{s, RewardVector(2)};
    t.state.heads[mover] = static_cast<std::int8_t>(target);
    t.state.visited |= bit(target);
    t.state.to_move = static_cast<std::int8_t>(1 - mover);
    if (!can_move(t.state, 1 - mover)) t.reward = win_reward(mover);
    return t;
  }

  std::string describe(const State& s) const {
    std::string out;
    for (int cell = 0; cell < size_ * size_; ++cell) {
      if (cell == s.heads[0]) out += '1';
      else if (cell == s.heads[1]) out += '2';
      else out += (s.visited & bit(cell)) ? '#' : '.';
      if (cell % size_ == size_ - 1) out += '/';
    }
    out += " to_move=" + std::to_string(s.to_move + 1);
    return out;
  }

 private:
  static std::uint64_t bit(int cell) { return std::uint64_t{1} << cell; }

  int size_;
  int horizon_;
};

}  // namespace uct_lambda
