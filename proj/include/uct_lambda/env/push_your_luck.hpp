#pragma once

#include <cmath>
#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "uct_lambda/game.hpp"

namespace uct_lambda {

/// Push-your-luck dice MDP. There are `dice` biased dice sharing `faces`
/// faces. Action 0 cashes out: the agent receives the summed value of all
/// marked faces and the marks are cleared. Action `mask` in [1, 2^dice) rolls
/// the dice whose bits are set. Rolled faces get marked, unless one of them is
/// already marked or two rolled dice show the same face, in which case every
/// mark is removed. The game never terminates on its own; the horizon ends it.
class PushYourLuck {
 public:
  static constexpr int kMaxDice = 6;
  static constexpr int kMaxFaces = 32;

  struct State {
    std::uint32_t marked = 0;

    std::size_t hash() const { return marked; }
    friend bool operator==(const State&, const State&) = default;
  };

  /// Default instance: die `i` has face weights proportional to (f + 1)^i, so
  /// die 0 is fair and later dice lean towards high faces. Face values are 1..faces.
  explicit PushYourLuck(int dice = 2, int faces = 6, int horizon = 50)
      : PushYourLuck(default_bias(dice, faces), default_values(faces), horizon) {}

  PushYourLuck(std::vector<std::vector<double>> bias, std::vector<double> face_values,
               int horizon = 50)
      : bias_(std::move(bias)), values_(std::move(face_values)), horizon_(horizon) {
    if (bias_.empty() || static_cast<int>(bias_.size()) > kMaxDice)
      throw std::invalid_argument("push_your_luck: dice count must be in [1, 6]");
    const auto faces = values_.size();
    if (faces < 2 || faces > kMaxFaces)
      throw std::invalid_argument("push_your_luck: face count must be in [2, 32]");
    for (const auto& row : bias_) {
      if (row.size() != faces)
        throw std::invalid_argument("push_your_luck: every die needs one probability per face");
      double total = 0.0;
      for (double p : row) {
        if (!(p >= 0.0)) throw std::invalid_argument("push_your_luck: negative face probability");
        total += p;
      }
      if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("push_your_luck: face probabilities must sum to 1");
    }
    for (const auto& row : bias_) {
      std::vector<double> cdf(row.size());
      double acc = 0.0;
      for (std::size_t f = 0; f < row.size(); ++f) cdf[f] = (acc += row[f]);
      cumulative_.push_back(std::move(cdf));
    }
  }

  static std::vector<std::vector<double>> default_bias(int dice, int faces) {
    std::vector<std::vector<double>> bias(static_cast<std::size_t>(std::max(dice, 0)));
    for (int d = 0; d < dice; ++d) {
      double total = 0.0;
      for (int f = 0; f < faces; ++f) total += std::pow(f + 1.0, d);
      for (int f = 0; f < faces; ++f) bias[d].push_back(std::pow(f + 1.0, d) / total);
    }
    return bias;
  }

  static std::vector<double> default_values(int faces) {
    std::vector<double> values;
    for (int f = 0; f < faces; ++f) values.push_back(f + 1.0);
    return values;
  }

  std::string name() const { return "push_your_luck"; }
  int dice() const { return static_cast<int>(bias_.size()); }
  int faces() const { return static_cast<int>(values_.size()); }
  int num_players() const { return 1; }
  int max_horizon() const { return horizon_; }
  double discount() const { return 1.0; }
  const std::vector<std::vector<double>>& bias() const { return bias_; }

  State initial_state(Rng&) const { return State{}; }
  bool is_terminal(const State&) const { return false; }
  int to_move(const State&) const { return 0; }

  void legal_actions(const State&, std::vector<Action>& out) const {
    out.clear();
    for (int a = 0; a < (1 << dice()); ++a) out.push_back(a);
  }

  double payout(const State& s) const {
    double total = 0.0;
    for (int f = 0; f < faces(); ++f)
      if (s.marked & (1u << f)) total += values_[f];
    return total;
  }

  /// Applies the marking rule to a set of simultaneously rolled faces.
  static State apply_roll(State s, std::span<const int> rolled) {
    std::uint32_t fresh = 0;
    for (int f : rolled) {
      const std::uint32_t bit = 1u << f;
      if ((s.marked & bit) || (fresh & bit)) return State{};
      fresh |= bit;
    }
    s.marked |= fresh;
    return s;
  }

  Transition<State> step(const State& s, Action a, Rng& rng) const {
    if (a < 0 || a >= (1 << dice())) throw_illegal_action(*this, s, a);
    if (a == 0) return {State{}, RewardVector{payout(s)}};
    std::array<int, kMaxDice> rolled{};
    std::size_t count = 0;
    for (int d = 0; d < dice(); ++d)
      if (a & (1 << d)) rolled[count++] = roll(d, rng);
    return {apply_roll(s, std::span<const int>(rolled.data(), count)), RewardVector{0.0}};
  }

  std::string describe(const State& s) const {
    std::string out = "marked=";
    for (int f = 0; f < faces(); ++f) out += (s.marked & (1u << f)) ? '1' : '0';
    return out;
  }

 private:
  int roll(int die, Rng& rng) const {
    const double u = rng.uniform01();
    const auto& cdf = cumulative_[die];
    for (std::size_t f = 0; f + 1 < cdf.size(); ++f)
      if (u < cdf[f]) return static_cast<int>(f);
    return static_cast<int>(cdf.size()) - 1;
  }

  std::vector<std::vector<double>> bias_;
  std::vector<double> values_;
  std::vector<std::vector<double>> cumulative_;
  int horizon_;
};

}  // namespace uct_lambda
