#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "uct_lambda/game.hpp"
#include "uct_lambda/lambda.hpp"
#include "uct_lambda/rng.hpp"
#include "uct_lambda/stats.hpp"

namespace uct_lambda {

struct SearchConfig {
  int iterations = 100;
  /// Maximum number of steps (tree plus rollout) simulated from the root.
  int planning_horizon = 50;
  double discount = 1.0;
  LambdaStrategy strategy;

  void validate() const {
    if (iterations < 1) throw std::invalid_argument("search: iterations must be >= 1");
    if (planning_horizon < 1) throw std::invalid_argument("search: planning horizon must be >= 1");
    if (!(discount > 0.0 && discount <= 1.0))
      throw std::invalid_argument("search: discount must lie in (0, 1]");
  }
};

/// Q_a + lambda * sqrt(ln n / N_a).
inline double ucb_score(double q, double lambda, std::int64_t n, std::int64_t n_a) {
  return q + lambda * std::sqrt(std::log(static_cast<double>(n)) / static_cast<double>(n_a));
}

/// Scores closer to the maximum than this fraction of the score magnitude
/// count as tied. Reordering of floating-point sums under reward scaling
/// moves mathematically equal scores by a few ulps; this keeps such ties
/// ties, so tie-breaking consumes the Rng identically at every scale.
inline constexpr double kTieTolerance = 1e-10;

/// Indices whose score is within `kTieTolerance * scale` of the best one.
inline void argmax_ties(std::span<const double> scores, double scale, std::vector<int>& out) {
  out.clear();
  if (scores.empty()) return;
  const double best = *std::max_element(scores.begin(), scores.end());
  const double threshold = best - kTieTolerance * scale;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (scores[i] >= threshold) out.push_back(static_cast<int>(i));
}

struct ActionStats {
  std::int64_t visits = 0;
  RewardVector return_sum;
  double return_m2 = 0.0;     // acting player's squared deviations from q
  double return_abs_sum = 0.0;  // acting player's |return|, bounds the rounding in q
  double q = 0.0;             // acting player's mean return; 0 while unvisited
};

using NodeId = std::size_t;

template <GameModel M>
struct Node {
  struct Child {
    std::size_t hash;
    NodeId id;
  };

  typename M::State state;
  int player = 0;
  int depth = 0;
  /// 1 for the creation visit plus one per backup through this node.
  std::int64_t visits = 1;
  std::vector<Action> actions;
  std::vector<ActionStats> stats;
  /// Per action: successors sampled so far.
  std::vector<std::vector<Child>> children;
};

/// Uniform-random playout. Returns the discounted per-player return of at most
/// `depth_remaining` steps taken from `state`.
template <GameModel M>
RewardVector rollout(const M& model, typename M::State state, int depth_remaining, double gamma,
                     Rng& rng, std::vector<Action>& scratch) {
  RewardVector total(model.num_players());
  double discount = 1.0;
  for (int d = 0; d < depth_remaining && !model.is_terminal(state); ++d) {
    model.legal_actions(state, scratch);
    const Action a = scratch[rng.uniform_int(scratch.size())];
    auto t = model.step(state, a, rng);
    total.add_scaled(t.reward, discount);
    discount *= gamma;
    state = std::move(t.state);
  }
  return total;
}

template <GameModel M>
RewardVector rollout(const M& model, const typename M::State& state, int depth_remaining,
                     double gamma, Rng& rng) {
  std::vector<Action> scratch;
  return rollout(model, state, depth_remaining, gamma, rng, scratch);
}

/// Closed-loop UCT tree. Each action keeps the successors sampled for it as
/// separate children; revisiting a known successor descends into it.
template <GameModel M>
class SearchTree {
 public:
  using State = typename M::State;
  using NodeType = Node<M>;

  struct PathStep {
    NodeId node;
    int action_index;
    RewardVector reward;
  };

  SearchTree(const M& model, State root, SearchConfig config)
      : model_(model), config_(config), scopes_(required_scopes(config.strategy.kind)) {
    config_.validate();
    if (model_.is_terminal(root)) throw std::invalid_argument("search: root state is terminal");
    nodes_.reserve(static_cast<std::size_t>(config_.iterations) + 1);
    add_node(std::move(root), 0);
  }

  /// Maintain every scope, not only those the strategy reads.
  void track_all_scopes() {
    if (nodes_.size() != 1 || nodes_[0].visits != 1)
      throw std::logic_error("track_all_scopes must be called before searching");
    scopes_ = ScopeIndex(ScopeMask::all());
    scopes_.add_node(0);
  }

  /// Record the action index of every tree-policy decision.
  void record_decisions(bool on) { record_decisions_ = on; }
  const std::vector<int>& decisions() const { return decisions_; }

  const SearchConfig& config() const { return config_; }
  const ScopeIndex& scopes() const { return scopes_; }
  const NodeType& node(NodeId id) const { return nodes_[id]; }
  const NodeType& root() const { return nodes_[0]; }
  std::size_t size() const { return nodes_.size(); }

  /// Tree policy at `id`: an unvisited action uniformly at random if any is
  /// left, otherwise the UCB argmax with random tie-breaking.
  int select_action(NodeId id, Rng& rng) {
    const NodeType& node = nodes_[id];
    const auto k = node.actions.size();
    std::size_t unvisited = 0;
    for (const auto& s : node.stats) unvisited += s.visits == 0;
    if (unvisited > 0) {
      auto pick = rng.uniform_int(unvisited);
      for (std::size_t a = 0; a < k; ++a)
        if (node.stats[a].visits == 0 && pick-- == 0) return log_decision(static_cast<int>(a));
    }

    scores_.resize(k);
    double scale = 0.0;
    const NodeView view{id, node.depth, node.visits};
    for (std::size_t a = 0; a < k; ++a) {
      const auto& s = node.stats[a];
      const double lambda =
          lambda_value(config_.strategy, scopes_, view, ActionView{s.visits, s.q, s.return_m2});
      const double bonus = lambda * std::sqrt(std::log(static_cast<double>(node.visits)) /
                                              static_cast<double>(s.visits));
      scores_[a] = s.q + bonus;
      // A q that cancels to zero still carries rounding of the size of its terms.
      scale = std::max(scale, std::abs(s.q) + std::abs(bonus) +
                                  s.return_abs_sum / static_cast<double>(s.visits));
    }
    argmax_ties(scores_, scale, ties_);
    return log_decision(ties_[rng.uniform_int(ties_.size())]);
  }

  /// One select / expand / rollout / backup cycle.
  void run_iteration(Rng& rng) {
    path_.clear();
    NodeId id = 0;
    RewardVector leaf(model_.num_players());
    for (;;) {
      const int a = select_action(id, rng);
      auto t = model_.step(nodes_[id].state, nodes_[id].actions[a], rng);
      path_.push_back({id, a, t.reward});
      const int child_depth = nodes_[id].depth + 1;
      if (child_depth >= config_.planning_horizon || model_.is_terminal(t.state)) break;

      const std::size_t h = t.state.hash();
      std::optional<NodeId> next;
      for (const auto& child : nodes_[id].children[a]) {
        if (child.hash == h && nodes_[child.id].state == t.state) {
          next = child.id;
          break;
        }
      }
      if (next) {
        id = *next;
        continue;
      }
      const NodeId created = add_node(std::move(t.state), child_depth);
      nodes_[id].children[a].push_back({h, created});
      leaf = rollout(model_, nodes_[created].state, config_.planning_horizon - child_depth,
                     config_.discount, rng, scratch_);
      break;
    }
    backpropagate(path_, leaf);
  }

  /// Backs `leaf_return` up a root-to-leaf path, discounting through each
  /// step's reward, and swaps each touched Q-value in the scope statistics.
  void backpropagate(std::span<const PathStep> path, RewardVector leaf_return) {
    RewardVector ret = std::move(leaf_return);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      RewardVector to_go = it->reward;
      to_go.add_scaled(ret, config_.discount);
      ret = to_go;

      NodeType& node = nodes_[it->node];
      ActionStats& s = node.stats[it->action_index];
      const double old_q = s.q;
      const bool replaces = s.visits > 0;
      ++s.visits;
      s.return_sum += ret;
      s.q = s.return_sum[node.player] / static_cast<double>(s.visits);
      // Welford: stays accurate when the spread is tiny next to the mean.
      s.return_m2 += (ret[node.player] - old_q) * (ret[node.player] - s.q);
      s.return_abs_sum += std::abs(ret[node.player]);
      ++node.visits;
      if (replaces)
        scopes_.replace(it->node, node.depth, old_q, s.q);
      else
        scopes_.replace(it->node, node.depth, std::nullopt, s.q);
    }
  }

  /// Root action with the most visits, ties broken at random.
  Action best_action(Rng& rng) {
    const NodeType& r = nodes_[0];
    std::int64_t most = -1;
    ties_.clear();
    for (std::size_t a = 0; a < r.actions.size(); ++a) {
      if (r.stats[a].visits > most) {
        most = r.stats[a].visits;
        ties_.clear();
      }
      if (r.stats[a].visits == most) ties_.push_back(static_cast<int>(a));
    }
    return r.actions[ties_[rng.uniform_int(ties_.size())]];
  }

 private:
  NodeId add_node(State state, int depth) {
    const NodeId id = nodes_.size();
    NodeType node;
    node.player = model_.to_move(state);
    node.depth = depth;
    model_.legal_actions(state, node.actions);
    node.stats.assign(node.actions.size(), ActionStats{0, RewardVector(model_.num_players()), 0.0, 0.0, 0.0});
    node.children.resize(node.actions.size());
    node.state = std::move(state);
    nodes_.push_back(std::move(node));
    scopes_.add_node(id);
    return id;
  }

  int log_decision(int a) {
    if (record_decisions_) decisions_.push_back(a);
    return a;
  }

  const M& model_;
  SearchConfig config_;
  ScopeIndex scopes_;
  std::vector<NodeType> nodes_;
  std::vector<PathStep> path_;
  std::vector<double> scores_;
  std::vector<int> ties_;
  std::vector<Action> scratch_;
  bool record_decisions_ = false;
  std::vector<int> decisions_;
};

/// Runs `config.iterations` UCT iterations from `root` and returns the most
/// visited root action.
template <GameModel M>
Action search(const M& model, const typename M::State& root, const SearchConfig& config,
              Rng& rng) {
  SearchTree<M> tree(model, root, config);
  for (int i = 0; i < config.iterations; ++i) tree.run_iteration(rng);
  return tree.best_action(rng);
}

}  // namespace uct_lambda
