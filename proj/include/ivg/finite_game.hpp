#pragma once

#include "ivg/nash.hpp"
#include "ivg/types.hpp"

#include <optional>

namespace ivg {

/// Finite intervention game: N users with finite action sets, a finite set of
/// intervention actions, a finite signal set with a signal distribution per
/// pure action profile, and payoffs for every participant (index 0 is the
/// manager) at every (intervention action, profile, signal) triple.
///
/// Immutable after construction; all operations on it are pure functions.
class FiniteInterventionGame {
 public:
  /// signal_dist: num_profiles x num_signals, one stochastic row per flat
  /// profile index. payoffs: N+1 tensors, each of size
  /// |A0| * num_profiles * num_signals, laid out as (a0, profile, signal).
  FiniteInterventionGame(std::vector<std::vector<std::string>> user_actions,
                         std::vector<std::string> intervention_actions,
                         std::vector<std::string> signals, Mat signal_dist,
                         std::vector<Vec> payoffs,
                         std::optional<std::string> no_intervention_action = {});

  int num_users() const { return static_cast<int>(user_actions_.size()); }
  int num_intervention_actions() const {
    return static_cast<int>(intervention_actions_.size());
  }
  int num_signals() const { return static_cast<int>(signals_.size()); }
  int num_profiles() const { return num_profiles_; }
  int num_actions(int user) const {
    return static_cast<int>(user_actions_[user].size());
  }
  std::vector<int> action_counts() const;

  const std::vector<std::string>& actions(int user) const {
    return user_actions_[user];
  }
  const std::vector<std::string>& intervention_actions() const {
    return intervention_actions_;
  }
  const std::vector<std::string>& signals() const { return signals_; }

  int flat(const std::vector<int>& profile) const;
  std::vector<int> profile_from_flat(int flat) const;

  /// Label lookups; unknown labels raise ValidationError.
  int action_index(int user, const std::string& label) const;
  int intervention_index(const std::string& label) const;
  int signal_index(const std::string& label) const;

  double signal_prob(int flat_profile, int signal) const {
    return signal_dist_(flat_profile, signal);
  }
  double payoff(int who, int a0, int flat_profile, int signal) const {
    return payoffs_[who][(static_cast<std::size_t>(a0) * num_profiles_ +
                          flat_profile) *
                             num_signals_ +
                         signal];
  }

  /// Index of the distinguished no-intervention action, when declared.
  std::optional<int> no_intervention_index() const { return no_intervention_; }

 private:
  std::vector<std::vector<std::string>> user_actions_;
  std::vector<std::string> intervention_actions_;
  std::vector<std::string> signals_;
  Mat signal_dist_;
  std::vector<Vec> payoffs_;
  std::optional<int> no_intervention_;
  int num_profiles_ = 0;
  int num_signals_ = 0;
};

/// Map from each signal to a probability distribution over intervention
/// actions, i.e. f(a0 | y). Rows of the matrix are per-signal distributions.
class FiniteInterventionRule {
 public:
  explicit FiniteInterventionRule(Mat per_signal);

  const Mat& matrix() const { return per_signal_; }
  int num_signals() const { return static_cast<int>(per_signal_.rows()); }
  double prob(int signal, int a0) const { return per_signal_(signal, a0); }

  /// Rule putting mass 1 on intervention action `a0` at every signal.
  static FiniteInterventionRule degenerate(int num_signals, int num_a0, int a0);

 private:
  Mat per_signal_;
};

/// v_who(f, a): double expectation of the payoff over signals and
/// intervention actions given the pure profile.
double ex_ante_payoff(const FiniteInterventionGame& game,
                      const FiniteInterventionRule& rule,
                      const std::vector<int>& profile, int who);

/// Label-based overload; unknown labels raise ValidationError.
double ex_ante_payoff(const FiniteInterventionGame& game,
                      const FiniteInterventionRule& rule,
                      const std::vector<std::string>& profile, int who);

/// Expectation of ex_ante_payoff over pure profiles under the product
/// distribution of the users' mixtures.
double mixed_ex_ante_payoff(const FiniteInterventionGame& game,
                            const FiniteInterventionRule& rule,
                            const MixedProfile& profile, int who);

/// The simultaneous game the users play given the rule, as payoff tensors
/// over user actions only; the manager's tensor rides along for reuse.
struct InducedGame {
  NormalFormGame users;
  Vec manager;  // flat over profiles
};
InducedGame induced_game(const FiniteInterventionGame& game,
                         const FiniteInterventionRule& rule);

/// True iff `profile` is a Nash equilibrium of the induced game, checked via
/// pure unilateral deviations (sufficient by multilinearity).
bool sustains(const FiniteInterventionGame& game,
              const FiniteInterventionRule& rule, const MixedProfile& profile,
              double tolerance = 1e-9);

}  // namespace ivg
