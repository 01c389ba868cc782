#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "uct_lambda/rng.hpp"

namespace uct_lambda {

using Action = int;

/// Per-player reward or return. Fixed capacity so rollouts never allocate.
class RewardVector {
 public:
  static constexpr int kMaxPlayers = 4;

  RewardVector() = default;
  explicit RewardVector(int num_players) : size_(num_players) {
    assert(num_players >= 1 && num_players <= kMaxPlayers);
  }
  RewardVector(std::initializer_list<double> values) : size_(static_cast<int>(values.size())) {
    assert(size_ <= kMaxPlayers);
    int i = 0;
    for (double v : values) values_[i++] = v;
  }

  int size() const { return size_; }
  double operator[](int i) const { return values_[i]; }
  double& operator[](int i) { return values_[i]; }

  RewardVector& operator+=(const RewardVector& other) {
    for (int i = 0; i < size_; ++i) values_[i] += other.values_[i];
    return *this;
  }

  RewardVector& operator*=(double factor) {
    for (int i = 0; i < size_; ++i) values_[i] *= factor;
    return *this;
  }

  /// this += factor * other
  void add_scaled(const RewardVector& other, double factor) {
    for (int i = 0; i < size_; ++i) values_[i] += factor * other.values_[i];
  }

  double sum() const {
    double s = 0.0;
    for (int i = 0; i < size_; ++i) s += values_[i];
    return s;
  }

  bool all_finite() const {
    for (int i = 0; i < size_; ++i)
      if (!std::isfinite(values_[i])) return false;
    return true;
  }

  friend bool operator==(const RewardVector& a, const RewardVector& b) {
    if (a.size_ != b.size_) return false;
    for (int i = 0; i < a.size_; ++i)
      if (a.values_[i] != b.values_[i]) return false;
    return true;
  }

 private:
  std::array<double, kMaxPlayers> values_{};
  int size_ = 0;
};

template <class State>
struct Transition {
  State state;
  RewardVector reward;
};

/// Game-theoretic status of a two-player board.
enum class Outcome { kOngoing, kPlayer1, kPlayer2, kDraw };

/// Raised by `step` when the action is not legal in the state. Always a caller bug.
class IllegalActionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised on violated internal bookkeeping (e.g. removing a value a scope never held).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A stochastic game. Models are immutable after construction; all randomness
/// flows through the caller's Rng. States must be equality comparable and
/// expose `hash()` so closed-loop trees can key children by sampled successor.
template <class M>
concept GameModel = requires(const M& model, const typename M::State& state, Action action,
                             Rng& rng, std::vector<Action>& actions) {
  typename M::State;
  { model.num_players() } -> std::convertible_to<int>;
  { model.max_horizon() } -> std::convertible_to<int>;
  { model.discount() } -> std::convertible_to<double>;
  { model.initial_state(rng) } -> std::same_as<typename M::State>;
  { model.is_terminal(state) } -> std::same_as<bool>;
  { model.to_move(state) } -> std::convertible_to<int>;
  model.legal_actions(state, actions);
  { model.step(state, action, rng) } -> std::same_as<Transition<typename M::State>>;
  { model.describe(state) } -> std::convertible_to<std::string>;
  { state.hash() } -> std::convertible_to<std::size_t>;
} && std::equality_comparable<typename M::State>;

/// Shared message for IllegalActionError.
template <GameModel M>
[[noreturn]] void throw_illegal_action(const M& model, const typename M::State& state,
                                       Action action) {
  throw IllegalActionError("illegal action " + std::to_string(action) + " in state " +
                           model.describe(state));
}

inline std::size_t hash_combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace uct_lambda
