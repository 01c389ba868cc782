#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "uct_lambda/stats.hpp"
#include "uct_lambda/student_t.hpp"

namespace uct_lambda {

enum class StrategyKind {
  kVanilla,
  kGlobalRange,
  kGlobalAbs,
  kGlobalStd,
  kLayerRange,
  kLayerAbs,
  kLayerStd,
  kLocalRange,
  kLocalStd,
  kLocalAbsQ,
  kLocalQ,
  kPolyUcb1,
};

inline constexpr std::array<StrategyKind, 12> kAllStrategies = {
    StrategyKind::kVanilla,    StrategyKind::kGlobalRange, StrategyKind::kGlobalAbs,
    StrategyKind::kGlobalStd,  StrategyKind::kLayerRange,  StrategyKind::kLayerAbs,
    StrategyKind::kLayerStd,   StrategyKind::kLocalRange,  StrategyKind::kLocalStd,
    StrategyKind::kLocalAbsQ,  StrategyKind::kLocalQ,      StrategyKind::kPolyUcb1,
};

inline constexpr std::string_view strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kVanilla: return "vanilla";
    case StrategyKind::kGlobalRange: return "global_range";
    case StrategyKind::kGlobalAbs: return "global_abs";
    case StrategyKind::kGlobalStd: return "global_std";
    case StrategyKind::kLayerRange: return "layer_range";
    case StrategyKind::kLayerAbs: return "layer_abs";
    case StrategyKind::kLayerStd: return "layer_std";
    case StrategyKind::kLocalRange: return "local_range";
    case StrategyKind::kLocalStd: return "local_std";
    case StrategyKind::kLocalAbsQ: return "local_abs_q";
    case StrategyKind::kLocalQ: return "local_q";
    case StrategyKind::kPolyUcb1: return "poly_ucb1";
  }
  return "?";
}

inline std::optional<StrategyKind> parse_strategy(std::string_view name) {
  for (auto kind : kAllStrategies)
    if (strategy_name(kind) == name) return kind;
  return std::nullopt;
}

/// Scale-free strategies: every one except a fixed exploration constant.
inline constexpr bool is_homogeneous(StrategyKind kind) { return kind != StrategyKind::kVanilla; }

/// Std and range strategies ignore a constant added to all Q-values in scope.
inline constexpr bool is_shift_invariant(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kGlobalRange:
    case StrategyKind::kGlobalStd:
    case StrategyKind::kLayerRange:
    case StrategyKind::kLayerStd:
    case StrategyKind::kLocalRange:
    case StrategyKind::kLocalStd: return true;
    default: return false;
  }
}

/// The statistics a strategy reads from the tree.
inline constexpr ScopeMask required_scopes(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kGlobalRange: return {true, false, false, true};
    case StrategyKind::kGlobalAbs:
    case StrategyKind::kGlobalStd: return {true, false, false, false};
    case StrategyKind::kLayerRange: return {false, true, false, true};
    case StrategyKind::kLayerAbs:
    case StrategyKind::kLayerStd: return {false, true, false, false};
    case StrategyKind::kLocalRange: return {false, false, true, true};
    case StrategyKind::kLocalStd: return {false, false, true, false};
    default: return {};
  }
}

/// Exploration factor rule: lambda = C * base(tree, node, action).
/// For Vanilla UCT the base is 1, so C is the exploration constant itself.
struct LambdaStrategy {
  StrategyKind kind = StrategyKind::kGlobalStd;
  double C = 2.0;

  LambdaStrategy() = default;
  LambdaStrategy(StrategyKind k, double c) : kind(k), C(c) {
    if (!(c > 0.0) || !std::isfinite(c))
      throw std::invalid_argument("lambda strategy: C must be a positive finite number");
  }

  std::string_view name() const { return strategy_name(kind); }
};

/// Decision node as seen by a strategy.
struct NodeView {
  std::size_t id = 0;
  int depth = 0;
  std::int64_t visits = 1;
};

/// State-action pair as seen by a strategy. `return_m2` is the sum of squared
/// deviations of the acting player's backed-up returns from their mean.
struct ActionView {
  std::int64_t visits = 0;
  double q = 0.0;
  double return_m2 = 0.0;
};

/// Population std of the individual returns behind one Q-value.
inline double return_std(const ActionView& action) {
  if (action.visits < 2) return 0.0;
  const auto n = static_cast<double>(action.visits);
  return std::sqrt(std::max(0.0, action.return_m2) / n);
}

/// Base (unscaled) lambda. Statistics that are undefined on the current
/// scope contribute 0, turning selection greedy until data arrives.
inline double lambda_base(StrategyKind kind, const ScopeIndex& scopes, const NodeView& node,
                          const ActionView& action) {
  auto or_zero = [](std::optional<double> v) { return v.value_or(0.0); };
  switch (kind) {
    case StrategyKind::kVanilla: return 1.0;
    case StrategyKind::kGlobalRange: return or_zero(scopes.global().range());
    case StrategyKind::kGlobalAbs: return or_zero(scopes.global().abs_mean());
    case StrategyKind::kGlobalStd: return or_zero(scope_std(scopes.global()));
    case StrategyKind::kLayerRange: return or_zero(scopes.layer(node.depth).range());
    case StrategyKind::kLayerAbs: return or_zero(scopes.layer(node.depth).abs_mean());
    case StrategyKind::kLayerStd: return or_zero(scope_std(scopes.layer(node.depth)));
    case StrategyKind::kLocalRange: return or_zero(scopes.local(node.id).range());
    case StrategyKind::kLocalStd: return or_zero(scope_std(scopes.local(node.id)));
    case StrategyKind::kLocalAbsQ: return std::abs(action.q);
    case StrategyKind::kLocalQ: return action.q;
    case StrategyKind::kPolyUcb1: {
      // One visit leaves sigma at 0, so the undefined dof-0 quantile never matters.
      if (action.visits < 2) return 0.0;
      if (node.visits < 2) throw InvariantError("poly_ucb1: log of node visits must be positive");
      return return_std(action) * student_t_quantile_99(action.visits - 1) /
             std::log(static_cast<double>(node.visits));
    }
  }
  return 0.0;
}

inline double lambda_value(const LambdaStrategy& strategy, const ScopeIndex& scopes,
                           const NodeView& node, const ActionView& action) {
  return strategy.C * lambda_base(strategy.kind, scopes, node, action);
}

}  // namespace uct_lambda
