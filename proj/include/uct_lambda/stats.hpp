#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uct_lambda/game.hpp"

namespace uct_lambda {

namespace detail {

/// Sum carried as an unevaluated pair hi + lo (error-free TwoSum), so that
/// long insert/erase histories leave residue near eps^2 rather than eps.
struct CompensatedSum {
  double hi = 0.0;
  double lo = 0.0;

  void add(double x) {
    const double s = hi + x;
    const double bp = s - hi;
    lo += (hi - (s - bp)) + (x - bp);
    hi = s;
  }
  /// Adds a * b including the rounding error of the product.
  void add_product(double a, double b) {
    const double p = a * b;
    add(p);
    lo += std::fma(a, b, -p);
  }
  double value() const { return hi + lo; }
};

}  // namespace detail

/// Running statistics over the Q-values of one scope (whole tree, one layer,
/// or one node). Supports replacing a value in O(log k) so the backup of a
/// state-action pair can swap its old Q for the new one.
///
/// Sums are kept relative to a shift (the first value inserted into an empty
/// aggregate) and in compensated form. Without both, E[X^2] - E[X]^2 leaves a
/// residue of order eps * E[X^2], whose square root is a spurious std of about
/// 1e-8 of the value magnitude when the true spread is 0.
class ScopeAggregate {
 public:
  explicit ScopeAggregate(bool track_extrema = true) : track_extrema_(track_extrema) {}

  std::int64_t count() const { return count_; }
  bool tracks_extrema() const { return track_extrema_; }

  double sum() const { return shifted_sum_.value() + static_cast<double>(count_) * shift_; }
  double sum_of_squares() const {
    const auto k = static_cast<double>(count_);
    return shifted_sumsq_.value() + 2.0 * shift_ * shifted_sum_.value() + k * shift_ * shift_;
  }
  double abs_sum() const { return abs_sum_.value(); }

  void insert(double q) {
    if (count_ == 0) {
      shift_ = q;
      shifted_sum_ = {};
      shifted_sumsq_ = {};
      abs_sum_ = {};
    }
    const double d = q - shift_;
    ++count_;
    shifted_sum_.add(d);
    shifted_sumsq_.add_product(d, d);
    abs_sum_.add(std::abs(q));
    if (track_extrema_) values_.insert(q);
  }

  void erase(double q) {
    if (count_ == 0) throw InvariantError("scope aggregate: erase from empty scope");
    if (track_extrema_) {
      auto it = values_.find(q);
      if (it == values_.end())
        throw InvariantError("scope aggregate: erasing value not in scope: " + std::to_string(q));
      values_.erase(it);
    }
    const double d = q - shift_;
    --count_;
    shifted_sum_.add(-d);
    shifted_sumsq_.add_product(-d, d);
    abs_sum_.add(-std::abs(q));
  }

  /// Removes `old_q` when present and inserts `new_q`.
  void replace(std::optional<double> old_q, double new_q) {
    if (old_q) erase(*old_q);
    insert(new_q);
  }

  /// Population variance, clamped at 0 against rounding residue.
  std::optional<double> variance() const {
    if (count_ == 0) return std::nullopt;
    // (k * S2 - S1^2) / k^2 with both products and the difference kept exact
    // to first order.
    const auto k = static_cast<double>(count_);
    const auto& s1 = shifted_sum_;
    const auto& s2 = shifted_sumsq_;
    const double a = k * s2.hi;
    const double a_lo = std::fma(k, s2.hi, -a) + k * s2.lo;
    const double b = s1.hi * s1.hi;
    const double b_lo = std::fma(s1.hi, s1.hi, -b) + 2.0 * s1.hi * s1.lo;
    const double diff = a - b;
    const double bp = diff - a;
    const double diff_lo = (a - (diff - bp)) + (-b - bp);
    return std::max(0.0, (diff + (diff_lo + a_lo - b_lo)) / (k * k));
  }

  std::optional<double> mean() const {
    if (count_ == 0) return std::nullopt;
    return sum() / static_cast<double>(count_);
  }

  std::optional<double> abs_mean() const {
    if (count_ == 0) return std::nullopt;
    return abs_sum_.value() / static_cast<double>(count_);
  }

  std::optional<double> min() const {
    if (count_ == 0 || !track_extrema_) return std::nullopt;
    return *values_.begin();
  }

  std::optional<double> max() const {
    if (count_ == 0 || !track_extrema_) return std::nullopt;
    return *values_.rbegin();
  }

  /// max - min; 0 for a single value.
  std::optional<double> range() const {
    if (count_ == 0 || !track_extrema_) return std::nullopt;
    return *values_.rbegin() - *values_.begin();
  }

  const std::multiset<double>& values() const { return values_; }

 private:
  bool track_extrema_;
  std::int64_t count_ = 0;
  double shift_ = 0.0;
  detail::CompensatedSum shifted_sum_;
  detail::CompensatedSum shifted_sumsq_;
  detail::CompensatedSum abs_sum_;
  std::multiset<double> values_;
};

/// Population standard deviation; nullopt for an empty scope.
inline std::optional<double> scope_std(const ScopeAggregate& agg) {
  auto var = agg.variance();
  if (!var) return std::nullopt;
  return std::sqrt(*var);
}

/// Which scopes a search tree maintains. Strategies only pay for what they read.
struct ScopeMask {
  bool global = false;
  bool layer = false;
  bool local = false;
  bool extrema = false;

  static ScopeMask all() { return {true, true, true, true}; }
};

/// Global, per-depth and per-node aggregates of the live Q-values of a tree.
class ScopeIndex {
 public:
  explicit ScopeIndex(ScopeMask mask = ScopeMask::all())
      : mask_(mask), global_(mask.extrema) {}

  const ScopeMask& mask() const { return mask_; }

  /// Registers node `id`; ids must be dense and increasing.
  void add_node(std::size_t id) {
    if (mask_.local && locals_.size() <= id) locals_.resize(id + 1, ScopeAggregate(mask_.extrema));
  }

  void replace(std::size_t node, int depth, std::optional<double> old_q, double new_q) {
    if (mask_.global) global_.replace(old_q, new_q);
    if (mask_.layer) {
      if (layers_.size() <= static_cast<std::size_t>(depth))
        layers_.resize(depth + 1, ScopeAggregate(mask_.extrema));
      layers_[depth].replace(old_q, new_q);
    }
    if (mask_.local) {
      add_node(node);
      locals_[node].replace(old_q, new_q);
    }
  }

  const ScopeAggregate& global() const { return global_; }

  const ScopeAggregate& layer(int depth) const {
    if (static_cast<std::size_t>(depth) < layers_.size()) return layers_[depth];
    return empty_;
  }
  std::size_t num_layers() const { return layers_.size(); }

  const ScopeAggregate& local(std::size_t node) const {
    if (node < locals_.size()) return locals_[node];
    return empty_;
  }
  std::size_t num_locals() const { return locals_.size(); }

 private:
  ScopeMask mask_;
  ScopeAggregate global_;
  std::vector<ScopeAggregate> layers_;
  std::vector<ScopeAggregate> locals_;
  ScopeAggregate empty_{false};
};

}  // namespace uct_lambda
