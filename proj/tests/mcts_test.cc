#include "uct_lambda/mcts.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "test_models.hpp"
#include "uct_lambda/env/navigation.hpp"
#include "uct_lambda/env/scaled.hpp"
#include "uct_lambda/env/tictactoe.hpp"

namespace uct_lambda {
namespace {

using testing::Bandit;
using testing::Corridor;

SearchConfig config_for(StrategyKind kind, double c, int iterations, int horizon = 50) {
  SearchConfig config;
  config.iterations = iterations;
  config.planning_horizon = horizon;
  config.strategy = LambdaStrategy(kind, c);
  return config;
}

TEST(Ucb, ScoreFormula) {
  EXPECT_NEAR(ucb_score(0.5, 2.0, 10, 4), 0.5 + 2.0 * std::sqrt(std::log(10.0) / 4.0), 1e-15);
  EXPECT_NEAR(ucb_score(0.5, 2.0, 10, 4), 2.0174271, 1e-6);
  EXPECT_EQ(ucb_score(-1.0, 3.0, 1, 1), -1.0);
}

TEST(Ucb, ArgmaxTiesUseRelativeTolerance) {
  std::vector<int> out;
  const std::vector<double> scores{1.0, 3.0, 3.0 - 1e-13, 2.9};
  argmax_ties(scores, 3.0, out);
  EXPECT_EQ(out, (std::vector<int>{1, 2}));
  argmax_ties(scores, 0.0, out);
  EXPECT_EQ(out, (std::vector<int>{1}));
}

TEST(Selection, EveryActionIsTriedBeforeAnyRepeat) {
  const Bandit model({0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SearchTree<Bandit> tree(model, {}, config_for(StrategyKind::kGlobalStd, 2.0, 50));
    tree.record_decisions(true);
    Rng rng(seed);
    for (int i = 0; i < 6; ++i) tree.run_iteration(rng);
    auto first = tree.decisions();
    std::sort(first.begin(), first.end());
    EXPECT_EQ(first, (std::vector<int>{0, 1, 2, 3, 4, 5}));
  }
}

TEST(Selection, TinyExplorationIsGreedy) {
  const Bandit model({0.2, 0.9, 0.5});
  SearchTree<Bandit> tree(model, {}, config_for(StrategyKind::kVanilla, 1e-9, 10));
  Rng rng(3);
  for (int i = 0; i < 3; ++i) tree.run_iteration(rng);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(tree.select_action(0, rng), 1);
}

TEST(Selection, TiedScoresAreBrokenUniformly) {
  // Equal payouts leave the global std at 0, so every arm scores the same.
  const Bandit model({1.0, 1.0, 1.0, 1.0});
  SearchTree<Bandit> tree(model, {}, config_for(StrategyKind::kGlobalStd, 2.0, 10));
  Rng rng(5);
  for (int i = 0; i < 4; ++i) tree.run_iteration(rng);
  std::vector<int> counts(4, 0);
  constexpr int kDraws = 40000;
  for (int i = 0; i < kDraws; ++i) ++counts[tree.select_action(0, rng)];
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - kDraws / 4.0) * (c - kDraws / 4.0) / (kDraws / 4.0);
  EXPECT_LT(chi2, 16.27);  // 0.999 quantile, 3 dof
}

TEST(Rollout, AccumulatesDiscountedRewards) {
  Rng rng(0);
  EXPECT_EQ(rollout(Corridor(), Corridor::State{}, 10, 1.0, rng)[0], -10.0);
  EXPECT_EQ(rollout(Corridor(), Corridor::State{}, 0, 1.0, rng)[0], 0.0);
  EXPECT_EQ(rollout(Corridor(3), Corridor::State{}, 10, 1.0, rng)[0], -3.0);
  EXPECT_DOUBLE_EQ(rollout(Corridor(), Corridor::State{}, 3, 0.5, rng)[0], -1.75);
}

TEST(Backpropagation, UpdatesVisitsAndMeans) {
  const Corridor model;
  SearchTree<Corridor> tree(model, {}, config_for(StrategyKind::kGlobalStd, 2.0, 10));
  using Step = SearchTree<Corridor>::PathStep;
  const std::vector<Step> first{{0, 0, RewardVector{1.0}}};
  tree.backpropagate(first, RewardVector{0.0});
  EXPECT_EQ(tree.root().stats[0].visits, 1);
  EXPECT_EQ(tree.root().stats[0].q, 1.0);
  EXPECT_EQ(tree.root().visits, 2);

  const std::vector<Step> second{{0, 0, RewardVector{3.0}}};
  tree.backpropagate(second, RewardVector{0.0});
  EXPECT_EQ(tree.root().stats[0].visits, 2);
  EXPECT_EQ(tree.root().stats[0].q, 2.0);
  EXPECT_EQ(tree.root().stats[0].return_m2, 2.0);
  EXPECT_EQ(tree.scopes().global().count(), 1);
  EXPECT_EQ(*tree.scopes().global().mean(), 2.0);
}

TEST(Backpropagation, DiscountsTheLeafReturn) {
  const Corridor model;
  auto config = config_for(StrategyKind::kGlobalStd, 2.0, 10);
  config.discount = 0.5;
  SearchTree<Corridor> tree(model, {}, config);
  const std::vector<SearchTree<Corridor>::PathStep> path{{0, 0, RewardVector{1.0}}};
  tree.backpropagate(path, RewardVector{1.0});
  EXPECT_DOUBLE_EQ(tree.root().stats[0].q, 1.5);
}

TEST(Search, SingleActionAndTerminalRoot) {
  const Corridor model(5);
  Rng rng(1);
  EXPECT_EQ(search(model, Corridor::State{}, config_for(StrategyKind::kGlobalStd, 2.0, 20), rng), 0);
  EXPECT_THROW(search(model, Corridor::State{5}, config_for(StrategyKind::kGlobalStd, 2.0, 20), rng),
               std::invalid_argument);
}

TEST(Search, FindsTheBetterArm) {
  const Bandit model({0.0, 1.0});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(search(model, {}, config_for(StrategyKind::kGlobalStd, 2.0, 500), rng), 1);
  }
}

TEST(Search, TerminatesAtTheHorizon) {
  const Corridor model(1000);
  SearchTree<Corridor> tree(model, {}, config_for(StrategyKind::kVanilla, 1.0, 100, 7));
  Rng rng(0);
  for (int i = 0; i < 100; ++i) tree.run_iteration(rng);
  EXPECT_EQ(tree.size(), 7u);
  EXPECT_DOUBLE_EQ(tree.root().stats[0].q, -7.0);
}

TEST(Search, IsDeterministicForAFixedSeed) {
  const TicTacToe model;
  auto run = [&](std::uint64_t seed) {
    SearchTree<TicTacToe> tree(model, {}, config_for(StrategyKind::kLayerStd, 1.0, 300));
    tree.record_decisions(true);
    Rng rng(seed);
    for (int i = 0; i < 300; ++i) tree.run_iteration(rng);
    return std::make_pair(tree.decisions(), tree.best_action(rng));
  };
  EXPECT_EQ(run(9), run(9));
  EXPECT_NE(run(9).first, run(10).first);
}

template <class M>
void check_tree_consistency(const SearchTree<M>& tree) {
  // Brute-force every scope from the visited Q-values.
  std::vector<double> global;
  std::map<int, std::vector<double>> layers;
  std::int64_t local_total = 0;
  for (NodeId id = 0; id < tree.size(); ++id) {
    const auto& node = tree.node(id);
    std::int64_t visit_sum = 0;
    std::vector<double> local;
    for (std::size_t a = 0; a < node.actions.size(); ++a) {
      const auto& s = node.stats[a];
      visit_sum += s.visits;
      std::int64_t child_visits = 0;
      for (const auto& child : node.children[a]) {
        child_visits += tree.node(child.id).visits;
        ASSERT_EQ(tree.node(child.id).depth, node.depth + 1);
      }
      ASSERT_LE(child_visits, s.visits);
      if (s.visits == 0) continue;
      ASSERT_NEAR(s.q, s.return_sum[node.player] / s.visits, 1e-12);
      global.push_back(s.q);
      layers[node.depth].push_back(s.q);
      local.push_back(s.q);
    }
    ASSERT_EQ(node.visits, 1 + visit_sum);
    const auto& agg = tree.scopes().local(id);
    ASSERT_EQ(agg.count(), static_cast<std::int64_t>(local.size()));
    local_total += agg.count();
    if (!local.empty()) {
      ASSERT_EQ(*agg.min(), *std::min_element(local.begin(), local.end()));
      ASSERT_EQ(*agg.max(), *std::max_element(local.begin(), local.end()));
    }
  }
  auto pop_std = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / v.size());
  };
  const auto& g = tree.scopes().global();
  ASSERT_EQ(g.count(), static_cast<std::int64_t>(global.size()));
  ASSERT_NEAR(*scope_std(g), pop_std(global), 1e-9);
  ASSERT_EQ(*g.min(), *std::min_element(global.begin(), global.end()));
  ASSERT_EQ(*g.max(), *std::max_element(global.begin(), global.end()));
  std::int64_t layer_total = 0;
  for (const auto& [depth, values] : layers) {
    const auto& agg = tree.scopes().layer(depth);
    ASSERT_EQ(agg.count(), static_cast<std::int64_t>(values.size()));
    ASSERT_NEAR(*scope_std(agg), pop_std(values), 1e-9);
    layer_total += agg.count();
  }
  EXPECT_EQ(layer_total, g.count());
  EXPECT_EQ(local_total, g.count());

  // Wider scopes never have a narrower range.
  for (NodeId id = 0; id < tree.size(); ++id) {
    const auto local = tree.scopes().local(id).range();
    if (!local) continue;
    const auto layer = *tree.scopes().layer(tree.node(id).depth).range();
    ASSERT_GE(*g.range(), layer);
    ASSERT_GE(layer, *local);
  }
}

TEST(Search, TreeAndScopesStayConsistent) {
  const TicTacToe ttt;
  SearchTree<TicTacToe> a(ttt, {}, config_for(StrategyKind::kGlobalStd, 2.0, 1000));
  a.track_all_scopes();
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) a.run_iteration(rng);
  check_tree_consistency(a);

  const Navigation nav;
  Rng init(0);
  SearchTree<Navigation> b(nav, nav.initial_state(init), config_for(StrategyKind::kLocalRange, 1.0, 1000));
  b.track_all_scopes();
  for (int i = 0; i < 1000; ++i) b.run_iteration(rng);
  check_tree_consistency(b);
}

TEST(Search, ScopeMaskFollowsTheStrategy) {
  const TicTacToe model;
  SearchTree<TicTacToe> tree(model, {}, config_for(StrategyKind::kLayerStd, 2.0, 50));
  Rng rng(1);
  for (int i = 0; i < 50; ++i) tree.run_iteration(rng);
  EXPECT_EQ(tree.scopes().global().count(), 0);
  EXPECT_EQ(tree.scopes().num_locals(), 0u);
  EXPECT_GT(tree.scopes().layer(0).count(), 0);
}

template <class Inner>
std::vector<int> decisions_at_scale(const Inner& inner, double mu, StrategyKind kind, double c,
                                    std::uint64_t seed) {
  const ScaledModel<Inner> model(inner, mu);
  Rng init(0);
  SearchTree<ScaledModel<Inner>> tree(model, model.initial_state(init), config_for(kind, c, 300));
  tree.record_decisions(true);
  Rng rng(seed);
  for (int i = 0; i < 300; ++i) tree.run_iteration(rng);
  auto out = tree.decisions();
  out.push_back(static_cast<int>(tree.best_action(rng)));
  return out;
}

TEST(Search, HomogeneousStrategiesIgnoreRewardScale) {
  for (auto kind : kAllStrategies) {
    if (!is_homogeneous(kind)) continue;
    for (std::uint64_t seed : {1u, 2u}) {
      const auto ttt = decisions_at_scale(TicTacToe(), 1.0, kind, 1.0, seed);
      EXPECT_EQ(decisions_at_scale(TicTacToe(), 0.01, kind, 1.0, seed), ttt) << strategy_name(kind);
      EXPECT_EQ(decisions_at_scale(TicTacToe(), 1000.0, kind, 1.0, seed), ttt) << strategy_name(kind);
      const auto nav = decisions_at_scale(Navigation(), 1.0, kind, 1.0, seed);
      EXPECT_EQ(decisions_at_scale(Navigation(), 1000.0, kind, 1.0, seed), nav) << strategy_name(kind);
    }
  }
}

TEST(Search, VanillaDependsOnRewardScale) {
  bool differs = false;
  for (std::uint64_t seed = 0; seed < 5 && !differs; ++seed)
    differs = decisions_at_scale(Navigation(), 1.0, StrategyKind::kVanilla, 1.0, seed) !=
              decisions_at_scale(Navigation(), 1000.0, StrategyKind::kVanilla, 1.0, seed);
  EXPECT_TRUE(differs);
}

}  // namespace
}  // namespace uct_lambda
