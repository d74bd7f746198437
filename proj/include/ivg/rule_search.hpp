#pragma once

#include "ivg/finite_game.hpp"

#include <optional>

namespace ivg {

/// Degenerate rule putting mass 1 on the declared no-intervention action at
/// every signal. ValidationError when the game declares none.
FiniteInterventionRule no_intervention_rule(const FiniteInterventionGame& game);

/// The no-intervention action must strictly dominate every other intervention
/// action for the manager, at every (profile, signal). Violations raise
/// ValidationError naming the violating (a0, a, y).
void check_manager_prefers_no_intervention(const FiniteInterventionGame& game);

/// Best feasible manager performance: maximizes the manager's mixed ex-ante
/// payoff under the no-intervention rule over a grid of mixed profiles plus
/// all pure profiles.
std::pair<double, MixedProfile> best_feasible(const FiniteInterventionGame& game,
                                              double profile_grid_step);

/// A rule/profile pair attaining the best manager value found.
struct InterventionEquilibrium {
  FiniteInterventionRule rule;
  MixedProfile profile;
  double manager_value;
};

struct SolveOptions {
  double rule_grid_step = 0.02;
  double profile_grid_step = 0.01;
  double tolerance = 1e-9;
  // Restrict the users to symmetric mixed profiles (all users playing the
  // same mixture); requires identical action counts across users.
  bool symmetric_profiles = false;
  // Local bisection on rule coordinates stops once the step drops below this.
  double refine_stop = 1e-6;
};

struct EquilibriumSummary {
  double v_bar;
  double v_star;
  double v_tilde;
  InterventionEquilibrium witness_star;
  MixedProfile witness_tilde;
  double rule_grid_step;
  double profile_grid_step;
  double grid_slack;
  double tolerance;
  // True when some grid rules had an empty pure equilibrium set (N >= 3 only;
  // such rules contribute no candidates).
  bool empty_equilibrium_sets_seen = false;
};

/// Grid search over the rule space (per-signal simplex grids), equilibria of
/// each induced game via the nash module (pure + mixed for N = 2, pure for
/// N >= 3), followed by local bisection refinement around the incumbent.
EquilibriumSummary solve(const FiniteInterventionGame& game,
                         const SolveOptions& options = {});

/// Witness data for a certified gap v_star < v_bar.
struct GapCertificate {
  double v_bar;
  double v_star;
  double gap;
  double grid_slack;
  std::string detail;
};

/// Checks the hypotheses of the imperfect-monitoring gap result: full-support
/// signal distribution and no profile sustained by the no-intervention rule
/// attaining v_bar. Returns the certificate when they hold, nothing
/// otherwise. InternalError if the hypotheses hold but the solved values do
/// not exhibit the gap.
std::optional<GapCertificate> gap_certificate(const FiniteInterventionGame& game,
                                              const EquilibriumSummary& summary);

}  // namespace ivg
