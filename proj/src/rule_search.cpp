#include "ivg/rule_search.hpp"

#include "ivg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ivg {

namespace {

constexpr double kValueTieTol = 1e-12;

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index k = 0; k < std::min(a.size(), b.size()); ++k) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return a.size() < b.size();
}

Vec flatten_profile(const MixedProfile& p) {
  Eigen::Index total = 0;
  for (const Vec& v : p.per_user) total += v.size();
  Vec flat(total);
  Eigen::Index at = 0;
  for (const Vec& v : p.per_user) {
    flat.segment(at, v.size()) = v;
    at += v.size();
  }
  return flat;
}

bool is_symmetric(const MixedProfile& p, double tol = 1e-9) {
  for (std::size_t i = 1; i < p.per_user.size(); ++i) {
    if (p.per_user[i].size() != p.per_user[0].size()) return false;
    if ((p.per_user[i] - p.per_user[0]).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

struct RuleEval {
  bool found = false;
  double value = -std::numeric_limits<double>::infinity();
  MixedProfile profile;
  bool empty_equilibrium_set = false;
};

// Best manager value over the sustained profiles of the induced game, with a
// deterministic lexicographic tie-break on the profile.
RuleEval evaluate_rule(const FiniteInterventionGame& game,
                       const FiniteInterventionRule& rule,
                       const SolveOptions& options,
                       const std::vector<Vec>& symmetric_grid) {
  const InducedGame induced = induced_game(game, rule);
  std::vector<MixedProfile> candidates;
  if (game.num_users() == 2) {
    candidates = mixed_nash_2p(induced.users, options.tolerance).profiles;
  } else {
    candidates = pure_nash(induced.users, options.tolerance).profiles;
  }
  if (options.symmetric_profiles) {
    std::erase_if(candidates,
                  [](const MixedProfile& p) { return !is_symmetric(p); });
    for (const Vec& point : symmetric_grid) {
      MixedProfile p;
      p.per_user.assign(game.num_users(), point);
      if (verify_nash(induced.users, p, options.tolerance)) {
        candidates.push_back(std::move(p));
      }
    }
  }
  RuleEval eval;
  eval.empty_equilibrium_set = candidates.empty();
  for (MixedProfile& p : candidates) {
    const double value = expected_value(induced.users, induced.manager, p);
    if (!eval.found || value > eval.value + kValueTieTol ||
        (value > eval.value - kValueTieTol &&
         lex_less(flatten_profile(p), flatten_profile(eval.profile)))) {
      eval.found = true;
      eval.value = value;
      eval.profile = std::move(p);
    }
  }
  return eval;
}

// Candidate rules one mass-move of size delta away from `rule`.
std::vector<FiniteInterventionRule> neighbor_rules(
    const FiniteInterventionRule& rule, double delta) {
  std::vector<FiniteInterventionRule> out;
  const Mat& m = rule.matrix();
  for (Eigen::Index y = 0; y < m.rows(); ++y) {
    for (Eigen::Index from = 0; from < m.cols(); ++from) {
      if (m(y, from) <= 0.0) continue;
      const double moved = std::min(delta, m(y, from));
      for (Eigen::Index to = 0; to < m.cols(); ++to) {
        if (to == from) continue;
        Mat n = m;
        n(y, from) -= moved;
        n(y, to) += moved;
        out.emplace_back(std::move(n));
      }
    }
  }
  return out;
}

}  // namespace

FiniteInterventionRule no_intervention_rule(const FiniteInterventionGame& game) {
  const auto idx = game.no_intervention_index();
  if (!idx) {
    throw ValidationError(
        "no_intervention_rule: game declares no 'no_intervention_action'");
  }
  return FiniteInterventionRule::degenerate(
      game.num_signals(), game.num_intervention_actions(), *idx);
}

void check_manager_prefers_no_intervention(const FiniteInterventionGame& game) {
  const auto idx = game.no_intervention_index();
  if (!idx) {
    throw ValidationError(
        "game declares no 'no_intervention_action'; cannot verify the manager's "
        "preference for it");
  }
  for (int a = 0; a < game.num_profiles(); ++a) {
    for (int y = 0; y < game.num_signals(); ++y) {
      const double top = game.payoff(0, *idx, a, y);
      for (int a0 = 0; a0 < game.num_intervention_actions(); ++a0) {
        if (a0 == *idx) continue;
        if (game.payoff(0, a0, a, y) >= top) {
          std::ostringstream msg;
          msg << "manager does not strictly prefer no intervention at (a0="
              << game.intervention_actions()[a0] << ", profile #" << a
              << ", y=" << game.signals()[y] << ")";
          throw ValidationError(msg.str());
        }
      }
    }
  }
}

std::pair<double, MixedProfile> best_feasible(const FiniteInterventionGame& game,
                                              double profile_grid_step) {
  check_manager_prefers_no_intervention(game);
  const FiniteInterventionRule rule = no_intervention_rule(game);
  const InducedGame induced = induced_game(game, rule);

  std::vector<std::vector<Vec>> grids;
  std::vector<int> sizes;
  for (int i = 0; i < game.num_users(); ++i) {
    grids.push_back(simplex_grid(game.num_actions(i), profile_grid_step));
    sizes.push_back(static_cast<int>(grids.back().size()));
  }

  double best = -std::numeric_limits<double>::infinity();
  MixedProfile best_profile;
  auto consider = [&](const MixedProfile& p) {
    const double value = expected_value(induced.users, induced.manager, p);
    if (value > best + kValueTieTol) {
      best = value;
      best_profile = p;
    }
  };

  std::vector<int> idx(game.num_users(), 0);
  do {
    MixedProfile p;
    p.per_user.reserve(game.num_users());
    for (int i = 0; i < game.num_users(); ++i) p.per_user.push_back(grids[i][idx[i]]);
    consider(p);
  } while (next_multi_index(idx, sizes));

  // Pure profiles (grid vertices are already included when 1/step is an
  // integer, but the max over a multilinear function is attained at a vertex,
  // so scan them regardless).
  std::vector<int> pure(game.num_users(), 0);
  const std::vector<int> counts = game.action_counts();
  do {
    consider(MixedProfile::pure(counts, pure));
  } while (next_multi_index(pure, counts));

  return {best, best_profile};
}

EquilibriumSummary solve(const FiniteInterventionGame& game,
                         const SolveOptions& options) {
  if (!(options.rule_grid_step > 0.0 && options.rule_grid_step <= 1.0) ||
      !(options.profile_grid_step > 0.0 && options.profile_grid_step <= 1.0)) {
    throw ValidationError("solve: grid steps must lie in (0, 1]");
  }
  if (options.symmetric_profiles) {
    for (int i = 1; i < game.num_users(); ++i) {
      if (game.num_actions(i) != game.num_actions(0)) {
        throw ValidationError(
            "solve: symmetric profiles require identical action counts");
      }
    }
  }

  std::vector<Vec> symmetric_grid;
  if (options.symmetric_profiles) {
    symmetric_grid =
        simplex_grid(game.num_actions(0), options.profile_grid_step);
  }

  // Rule grid: per-signal simplex grid, product across signals.
  const std::vector<Vec> signal_points =
      simplex_grid(game.num_intervention_actions(), options.rule_grid_step);
  const int per_signal = static_cast<int>(signal_points.size());
  long total = 1;
  for (int y = 0; y < game.num_signals(); ++y) total *= per_signal;

  auto rule_at = [&](long index) {
    Mat m(game.num_signals(), game.num_intervention_actions());
    for (int y = game.num_signals() - 1; y >= 0; --y) {
      m.row(y) = signal_points[index % per_signal].transpose();
      index /= per_signal;
    }
    return FiniteInterventionRule(std::move(m));
  };

  std::vector<RuleEval> evals(total);
  parallel_for(static_cast<int>(total), [&](int index) {
    evals[index] = evaluate_rule(game, rule_at(index), options, symmetric_grid);
  });

  // Deterministic reduction: grid enumeration order is lexicographic in the
  // flattened rule vector, so first-wins resolves ties toward the
  // lexicographically smallest rule.
  long best_index = -1;
  bool empty_sets = false;
  for (long index = 0; index < total; ++index) {
    empty_sets |= evals[index].empty_equilibrium_set;
    if (!evals[index].found) continue;
    if (best_index < 0 || evals[index].value > evals[best_index].value + kValueTieTol) {
      best_index = index;
    }
  }
  if (best_index < 0) {
    throw InternalError(
        "solve: no sustained profile found for any grid rule; for N = 2 this "
        "indicates an equilibrium-search bug");
  }

  FiniteInterventionRule incumbent_rule = rule_at(best_index);
  RuleEval incumbent = evals[best_index];

  // Local bisection on rule coordinates around the incumbent.
  double delta = options.rule_grid_step / 2.0;
  while (delta >= options.refine_stop) {
    bool improved = false;
    for (const FiniteInterventionRule& candidate :
         neighbor_rules(incumbent_rule, delta)) {
      RuleEval eval = evaluate_rule(game, candidate, options, symmetric_grid);
      if (eval.found && eval.value > incumbent.value + kValueTieTol) {
        incumbent_rule = candidate;
        incumbent = std::move(eval);
        improved = true;
      }
    }
    if (!improved) delta /= 2.0;
  }

  const FiniteInterventionRule tilde = no_intervention_rule(game);
  const RuleEval tilde_eval = evaluate_rule(game, tilde, options, symmetric_grid);
  if (!tilde_eval.found) {
    throw InternalError("solve: no equilibrium found under the no-intervention rule");
  }
  const auto [v_bar, bar_profile] =
      best_feasible(game, options.profile_grid_step);
  (void)bar_profile;

  // Lipschitz estimate of the manager's ex-ante payoff in the rule, by
  // sampled finite differences at the witness; grid slack reports the
  // residual uncertainty at the final refinement resolution.
  double lipschitz = 0.0;
  {
    const double h = 1e-4;
    const double base =
        mixed_ex_ante_payoff(game, incumbent_rule, incumbent.profile, 0);
    for (const FiniteInterventionRule& candidate :
         neighbor_rules(incumbent_rule, h)) {
      const double shifted =
          mixed_ex_ante_payoff(game, candidate, incumbent.profile, 0);
      lipschitz = std::max(lipschitz, std::abs(shifted - base) / h);
    }
  }

  EquilibriumSummary summary{
      v_bar,
      incumbent.value,
      tilde_eval.value,
      InterventionEquilibrium{incumbent_rule, incumbent.profile, incumbent.value},
      tilde_eval.profile,
      options.rule_grid_step,
      options.profile_grid_step,
      lipschitz * options.refine_stop,
      options.tolerance,
      empty_sets};
  if (summary.v_tilde > summary.v_star + 1e-9 ||
      summary.v_star > summary.v_bar + 1e-9) {
    throw InternalError("solve: benchmark ordering v_tilde <= v_star <= v_bar violated");
  }
  return summary;
}

std::optional<GapCertificate> gap_certificate(const FiniteInterventionGame& game,
                                              const EquilibriumSummary& summary) {
  for (int a = 0; a < game.num_profiles(); ++a) {
    for (int y = 0; y < game.num_signals(); ++y) {
      if (game.signal_prob(a, y) <= 0.0) return std::nullopt;
    }
  }

  const FiniteInterventionRule tilde = no_intervention_rule(game);
  const InducedGame induced = induced_game(game, tilde);
  const EquilibriumSet eq = game.num_users() == 2
                                ? mixed_nash_2p(induced.users, summary.tolerance)
                                : pure_nash(induced.users, summary.tolerance);
  for (const MixedProfile& p : eq.profiles) {
    if (expected_value(induced.users, induced.manager, p) >=
        summary.v_bar - 1e-9) {
      return std::nullopt;
    }
  }

  const double gap = summary.v_bar - summary.v_star;
  if (gap <= summary.grid_slack) {
    throw InternalError(
        "gap_certificate: hypotheses hold but v_star >= v_bar - grid_slack "
        "(solver inconsistency)");
  }
  std::ostringstream detail;
  detail << "full-support signals and no profile sustained without "
            "intervention attains v_bar; certified gap "
         << gap << " exceeds grid slack " << summary.grid_slack;
  return GapCertificate{summary.v_bar, summary.v_star, gap, summary.grid_slack,
                        detail.str()};
}

}  // namespace ivg
