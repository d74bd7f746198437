#pragma once

#include "ivg/types.hpp"

#include <functional>

namespace ivg {

/// Minimizes a unimodal function on [lo, hi] by golden-section search down to
/// the given bracket width; both endpoints are always evaluated. Returns the
/// (argmin, min) found.
std::pair<double, double> golden_section_min(
    const std::function<double(double)>& f, double lo, double hi,
    double bracket = 1e-8);

std::pair<double, double> golden_section_max(
    const std::function<double(double)>& f, double lo, double hi,
    double bracket = 1e-8);

/// Perfect-monitoring game: interval action spaces for the users and the
/// intervention device, payoff callables u_i(a0, a). The intervention device
/// observes the pure action profile directly.
///
/// Payoff callables must be pure; evaluation is safe from any thread.
class ContinuousGame {
 public:
  using Payoff = std::function<double(double a0, const Vec& a)>;

  /// Construction spot-checks, on a 5-point-per-dimension grid, that the low
  /// intervention endpoint weakly dominates every intervention level for all
  /// participants, and that payoffs are finite on the box.
  ContinuousGame(std::vector<std::array<double, 2>> user_intervals,
                 std::array<double, 2> intervention_interval,
                 std::vector<Payoff> user_payoffs, Payoff manager_payoff);

  int num_users() const { return static_cast<int>(user_intervals_.size()); }
  double user_lo(int i) const { return user_intervals_[i][0]; }
  double user_hi(int i) const { return user_intervals_[i][1]; }
  double a0_lo() const { return intervention_interval_[0]; }
  double a0_hi() const { return intervention_interval_[1]; }

  double user_payoff(int i, double a0, const Vec& a) const {
    return user_payoffs_[i](a0, a);
  }
  double manager_payoff(double a0, const Vec& a) const {
    return manager_payoff_(a0, a);
  }

 private:
  std::vector<std::array<double, 2>> user_intervals_;
  std::array<double, 2> intervention_interval_;
  std::vector<Payoff> user_payoffs_;
  Payoff manager_payoff_;
};

/// Rule that punishes a unilateral deviator from the target with its
/// payoff-minimizing intervention level and applies none otherwise.
class ExtremeRule {
 public:
  ExtremeRule(const ContinuousGame* game, Vec target);

  const Vec& target() const { return target_; }

  /// Intervention level prescribed at profile `a`.
  double operator()(const Vec& a) const;

  /// Payoff-minimizing intervention level for user `i` at profile `a`.
  double punishment(int i, const Vec& a) const;

 private:
  const ContinuousGame* game_;
  Vec target_;
};

ExtremeRule extreme_rule(const ContinuousGame& game, const Vec& target);

/// deviation_oracle(i, a) must return
///   max over a_i' in [lo_i, hi_i] of u_i(argmin-payoff level, (a_i', a_-i)),
/// the best payoff user i can secure by deviating when punished extremely.
using DeviationOracle = std::function<double(int user, const Vec& profile)>;

/// Default oracle: dense 1-D grid (2001 points) over the deviator's interval
/// followed by golden-section refinement around the best grid point.
DeviationOracle default_deviation_oracle(const ContinuousGame& game);

/// Membership of the self-enforcing set: profile is sustained by its own
/// extreme rule.
bool in_E_star(const ContinuousGame& game, const Vec& profile,
               const DeviationOracle& oracle, double tolerance = 1e-9);
bool in_E_star(const ContinuousGame& game, const Vec& profile,
               double tolerance = 1e-9);

struct ContinuousEquilibrium {
  Vec profile;
  double value;  // manager payoff at the low intervention endpoint
};

/// Maximizes the manager's no-intervention payoff over the sustainable set:
/// grid scan filtered by in_E_star plus local coordinate refinement staying
/// inside the set.
ContinuousEquilibrium intervention_equilibrium(const ContinuousGame& game,
                                               double profile_grid_step,
                                               const DeviationOracle& oracle);
ContinuousEquilibrium intervention_equilibrium(const ContinuousGame& game,
                                               double profile_grid_step);

/// Truncated affine rule: intervention level c . (a - target) + a0_lo,
/// clamped to the intervention interval.
class AffineRule {
 public:
  AffineRule(Vec target, Vec rates, double a0_lo, double a0_hi);

  double operator()(const Vec& a) const;
  const Vec& target() const { return target_; }
  const Vec& rates() const { return rates_; }

 private:
  Vec target_;
  Vec rates_;
  double a0_lo_;
  double a0_hi_;
};

/// Intervention rates -du_i/da_i / (du_i/da_0) at (a0_lo, target), by central
/// differences in a_i and a right one-sided difference in a0. The target must
/// be interior and u_i strictly decreasing in a0 at the target.
Vec affine_rate(const ContinuousGame& game, const Vec& target,
                double derivative_step_rel = 1e-5);

struct ConditionReport {
  struct Item {
    std::string name;
    int user;
    bool pass;
    double worst_margin;  // most positive violation; <= 0 means pass
  };
  std::vector<Item> items;
  bool all_pass = true;
};

/// Second-order sufficient conditions for the affine rule to sustain the
/// target, sampled on 201 points per interval (an interval with lower >=
/// upper bound is empty), plus a direct scan that no sampled unilateral
/// deviation under the rule beats the target payoff.
ConditionReport affine_sustains_check(const ContinuousGame& game,
                                      const Vec& target, const Vec& rates,
                                      double derivative_step_rel = 1e-5);

/// True iff some maximizer of the manager's no-intervention payoff is itself
/// immune to extreme-rule deviations, in which case the best feasible
/// performance is attainable.
bool corollary1_check(const ContinuousGame& game, double profile_grid_step,
                      const DeviationOracle& oracle);

}  // namespace ivg
