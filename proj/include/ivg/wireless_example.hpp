#pragma once

#include "ivg/perfect_game.hpp"

#include <string>
#include <vector>

namespace ivg {

/// N-user resource-sharing game under perfect monitoring: the intervention
/// device shares the medium (type-1), quality is linear in total usage with
/// a floor at zero, and each user's payoff is quality times its own usage.
struct WirelessParams {
  int num_users = 2;
  double quality_intercept = 12.0;  // q
  double quality_slope = 1.0;       // b
  double user_max = 12.0;           // common per-user maximum usage
  double a0_max = 0.0;              // intervention capability

  /// Positivity plus user_max >= q/2b; ValidationError otherwise.
  void validate() const;

  double a_social() const {  // a_l, the symmetric social optimum usage
    return quality_intercept / (2.0 * num_users * quality_slope);
  }
  double a_nash() const {  // a_h, the symmetric no-intervention Nash usage
    return quality_intercept / ((num_users + 1) * quality_slope);
  }
};

/// Q(a0, a) = [q - b (a0 + sum a_i)]^+.
double quality(const WirelessParams& params, double a0, const Vec& profile);

double user_payoff(const WirelessParams& params, int user, double a0,
                   const Vec& profile);
double manager_payoff(const WirelessParams& params, double a0,
                      const Vec& profile);

/// The corresponding ContinuousGame over [0, user_max]^N x [0, a0_max].
ContinuousGame make_wireless_game(const WirelessParams& params);

struct WirelessBenchmarks {
  double v_bar;    // q^2 / 4Nb
  double v_tilde;  // q^2 / (N+1)^2 b
  double a_social;
  double a_nash;
};
WirelessBenchmarks benchmarks(const WirelessParams& params);

/// Minimum intervention capability achieving the best feasible performance:
/// (sqrt(N) - 1)^2 q / 2Nb.
double a0_min(const WirelessParams& params);

/// Closed-form sustainable-set membership: the unconstrained quadratic
/// deviation maximum against each user never exceeds its on-path payoff
/// (exact because user_max >= q/2b keeps the maximizer inside the interval).
bool in_E_star_closed_form(const WirelessParams& params, const Vec& profile);

/// Deviation oracle backed by the same closed form, usable with the
/// perfect-monitoring engine.
DeviationOracle closed_form_deviation_oracle(const WirelessParams& params);

struct VStarRow {
  double a0_max;
  double v_star;
};

/// Best performance with intervention for each capability value, via the
/// sustainable-set maximization with the closed-form deviation oracle.
std::vector<VStarRow> v_star_curve(const WirelessParams& params_base,
                                   const std::vector<double>& a0_values,
                                   double profile_grid_step = 0.2);

/// The affine rule with target (a_l, ..., a_l) and rates all N-1:
/// f(a) = [(N-1)(sum a_i - q/2b)] clamped to [0, a0_max].
AffineRule eq4_rule(const WirelessParams& params);

struct Fig6Row {
  double a_i;
  double u_with_rule;
  double u_no_intervention;
};

/// Payoff of one user against the other at a_l, with and without the affine
/// rule (N = 2 only).
std::vector<Fig6Row> fig6_data(const WirelessParams& params,
                               const std::vector<double>& a_i_values);

/// CSV for one sustainable-region slice: header "a1,a2,member", grid rows.
std::string region_csv(const WirelessParams& params, int points_per_axis);

std::string fig6_csv(const std::vector<Fig6Row>& rows);

}  // namespace ivg
