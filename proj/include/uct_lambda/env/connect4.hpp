#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uct_lambda/env/tictactoe.hpp"
#include "uct_lambda/game.hpp"

namespace uct_lambda {

/// Connect 4 on 7 columns x 6 rows. Bitboards use 7 bits per column
/// (bit `col * 7 + row`, row 0 at the bottom); the top bit of every column
/// stays empty so line shifts never wrap. Actions are column indices.
class Connect4 {
 public:
  static constexpr int kColumns = 7;
  static constexpr int kRows = 6;

  struct State {
    std::array<std::uint64_t, 2> stones{};
    std::array<std::int8_t, kColumns> heights{};
    std::int8_t to_move = 0;

    std::size_t hash() const {
      return hash_combine(hash_combine(stones[0], stones[1]), static_cast<std::size_t>(to_move));
    }
    friend bool operator==(const State&, const State&) = default;
  };

  explicit Connect4(int horizon = 200) : horizon_(horizon) {}

  std::string name() const { return "connect4"; }
  int num_players() const { return 2; }
  int max_horizon() const { return horizon_; }
  double discount() const { return 1.0; }

  State initial_state(Rng&) const { return State{}; }

  static bool has_four(std::uint64_t b) {
    for (int shift : {1, 7, 6, 8}) {
      const std::uint64_t pairs = b & (b >> shift);
      if (pairs & (pairs >> (2 * shift))) return true;
    }
    return false;
  }

  static Outcome winner(const State& s) {
    if (has_four(s.stones[0])) return Outcome::kPlayer1;
    if (has_four(s.stones[1])) return Outcome::kPlayer2;
    if (std::popcount(s.stones[0] | s.stones[1]) == kColumns * kRows) return Outcome::kDraw;
    return Outcome::kOngoing;
  }

  bool is_terminal(const State& s) const { return winner(s) != Outcome::kOngoing; }
  int to_move(const State& s) const { return s.to_move; }

  void legal_actions(const State& s, std::vector<Action>& out) const {
    out.clear();
    if (is_terminal(s)) return;
    for (int c = 0; c < kColumns; ++c)
      if (s.heights[c] < kRows) out.push_back(c);
  }

  Transition<State> step(const State& s, Action a, Rng&) const {
    if (a < 0 || a >= kColumns || s.heights[a] >= kRows || is_terminal(s))
      throw_illegal_action(*this, s, a);
    Transition<State> t{s, RewardVector(2)};
    const int mover = s.to_move;
    t.state.stones[mover] |= std::uint64_t{1} << (a * 7 + s.heights[a]);
    ++t.state.heights[a];
    t.state.to_move = static_cast<std::int8_t>(1 - mover);
    if (has_four(t.state.stones[mover])) t.reward = win_reward(mover);
    return t;
  }

  /// Builds a position from rows listed top to bottom using '.', 'X' (P1), 'O' (P2).
  /// Stones must be supported from below. Side to move follows the stone counts.
  static State from_rows(const std::vector<std::string>& rows) {
    if (rows.size() != kRows) throw std::invalid_argument("connect4: expected 6 rows");
    State s;
    for (int c = 0; c < kColumns; ++c) {
      for (int r = 0; r < kRows; ++r) {
        const char ch = rows[kRows - 1 - r].at(c);
        if (ch == '.') continue;
        if (r != s.heights[c]) throw std::invalid_argument("connect4: floating stone");
        s.stones[ch == 'X' ? 0 : 1] |= std::uint64_t{1} << (c * 7 + r);
        ++s.heights[c];
      }
    }
    const int p1 = std::popcount(s.stones[0]);
    const int p2 = std::popcount(s.stones[1]);
    if (p1 - p2 < 0 || p1 - p2 > 1) throw std::invalid_argument("connect4: bad stone counts");
    s.to_move = static_cast<std::int8_t>(p1 - p2);
    return s;
  }

  std::string describe(const State& s) const {
    std::string out;
    for (int r = kRows - 1; r >= 0; --r) {
      for (int c = 0; c < kColumns; ++c) {
        const auto bit = std::uint64_t{1} << (c * 7 + r);
        out += (s.stones[0] & bit) ? 'X' : (s.stones[1] & bit) ? 'O' : '.';
      }
      out += '/';
    }
    out += " to_move=" + std::to_string(s.to_move + 1);
    return out;
  }

 private:
  int horizon_;
};

}  // namespace uct_lambda
