#pragma once

#include "ivg/types.hpp"

namespace ivg {

/// N-player normal-form game with dense payoff storage. Entry order for the
/// flat profile index is row-major over (a_1, ..., a_N).
class NormalFormGame {
 public:
  NormalFormGame(std::vector<int> action_counts, std::vector<Vec> payoffs);

  int num_players() const { return static_cast<int>(action_counts_.size()); }
  int num_profiles() const { return num_profiles_; }
  const std::vector<int>& action_counts() const { return action_counts_; }
  int actions(int player) const { return action_counts_[player]; }

  int flat(const std::vector<int>& profile) const;
  std::vector<int> profile_from_flat(int flat) const;

  double payoff(int player, int flat_profile) const {
    return payoffs_[player][flat_profile];
  }
  const Vec& payoff_tensor(int player) const { return payoffs_[player]; }

 private:
  std::vector<int> action_counts_;
  std::vector<Vec> payoffs_;
  int num_profiles_ = 0;
};

struct EquilibriumSet {
  std::vector<MixedProfile> profiles;
  std::vector<bool> is_pure;
  double tolerance = 0.0;
  // Set when a support's indifference system was singular and skipped;
  // degenerate games may under-report mixed equilibria in that case.
  bool degenerate_supports_skipped = false;
};

/// Expected payoff of `player` under a mixed profile (multilinear expectation
/// of the payoff tensor).
double expected_payoff(const NormalFormGame& g, const MixedProfile& profile,
                       int player);

/// Expected payoff of an arbitrary flat tensor over profiles (used for the
/// manager's payoff riding along an induced game).
double expected_value(const NormalFormGame& g, const Vec& tensor,
                      const MixedProfile& profile);

/// True iff no player gains more than `tolerance` by any unilateral pure
/// deviation (sufficient for mixed deviations by multilinearity).
bool verify_nash(const NormalFormGame& g, const MixedProfile& profile,
                 double tolerance);

/// Exhaustive enumeration of pure Nash equilibria, any number of players.
EquilibriumSet pure_nash(const NormalFormGame& g, double tolerance);

/// All mixed equilibria of a 2-player game by support enumeration over
/// equal-size supports; solutions are verified and deduplicated. Includes all
/// pure equilibria. Results ordered lexicographically by support.
EquilibriumSet mixed_nash_2p(const NormalFormGame& g, double tolerance);

}  // namespace ivg
