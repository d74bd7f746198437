#include "ivg/wireless_example.hpp"

#include "ivg/parallel.hpp"

#include <cmath>
#include <sstream>

namespace ivg {

void WirelessParams::validate() const {
  if (num_users < 1) {
    throw ValidationError("wireless parameters: at least one user required");
  }
  if (!(quality_intercept > 0.0) || !(quality_slope > 0.0)) {
    throw ValidationError("wireless parameters: q and b must be positive");
  }
  if (a0_max < 0.0) {
    throw ValidationError("wireless parameters: intervention capability must be >= 0");
  }
  if (user_max < quality_intercept / (2.0 * quality_slope)) {
    throw ValidationError(
        "wireless parameters: per-user maximum must be at least q/2b");
  }
}

double quality(const WirelessParams& params, double a0, const Vec& profile) {
  return std::max(
      0.0, params.quality_intercept -
               params.quality_slope * (a0 + profile.sum()));
}

double user_payoff(const WirelessParams& params, int user, double a0,
                   const Vec& profile) {
  return quality(params, a0, profile) * profile[user];
}

double manager_payoff(const WirelessParams& params, double a0,
                      const Vec& profile) {
  return quality(params, a0, profile) * profile.sum() / params.num_users;
}

ContinuousGame make_wireless_game(const WirelessParams& params) {
  params.validate();
  std::vector<std::array<double, 2>> intervals(params.num_users,
                                               {0.0, params.user_max});
  std::vector<ContinuousGame::Payoff> users;
  for (int i = 0; i < params.num_users; ++i) {
    users.push_back([params, i](double a0, const Vec& a) {
      return user_payoff(params, i, a0, a);
    });
  }
  return ContinuousGame(std::move(intervals), {0.0, params.a0_max},
                        std::move(users), [params](double a0, const Vec& a) {
                          return manager_payoff(params, a0, a);
                        });
}

WirelessBenchmarks benchmarks(const WirelessParams& params) {
  params.validate();
  const double q = params.quality_intercept, b = params.quality_slope;
  const int n = params.num_users;
  WirelessBenchmarks out;
  out.v_bar = q * q / (4.0 * n * b);
  out.v_tilde = q * q / ((n + 1.0) * (n + 1.0) * b);
  out.a_social = params.a_social();
  out.a_nash = params.a_nash();
  if (n > 1 && !(out.a_nash > out.a_social)) {
    throw InternalError("wireless benchmarks: expected a_h > a_l");
  }
  return out;
}

double a0_min(const WirelessParams& params) {
  params.validate();
  const double root = std::sqrt(static_cast<double>(params.num_users)) - 1.0;
  return root * root * params.quality_intercept /
         (2.0 * params.num_users * params.quality_slope);
}

bool in_E_star_closed_form(const WirelessParams& params, const Vec& profile) {
  const double q = params.quality_intercept, b = params.quality_slope;
  for (int i = 0; i < params.num_users; ++i) {
    const double on_path = quality(params, 0.0, profile) * profile[i];
    const double others = profile.sum() - profile[i];
    const double punished =
        std::max(0.0, q - b * (params.a0_max + others));
    // Unconstrained deviation maximizer (q - b(a0_max + s_{-i}))/2b lies in
    // [0, user_max] because user_max >= q/2b, so the quadratic peak is exact.
    const double best_deviation = punished * punished / (4.0 * b);
    if (on_path < best_deviation - 1e-9) return false;
  }
  return true;
}

DeviationOracle closed_form_deviation_oracle(const WirelessParams& params) {
  return [params](int user, const Vec& profile) {
    const double q = params.quality_intercept, b = params.quality_slope;
    const double others = profile.sum() - profile[user];
    const double punished = std::max(0.0, q - b * (params.a0_max + others));
    return punished * punished / (4.0 * b);
  };
}

std::vector<VStarRow> v_star_curve(const WirelessParams& params_base,
                                   const std::vector<double>& a0_values,
                                   double profile_grid_step) {
  std::vector<VStarRow> rows;
  for (double a0 : a0_values) {
    WirelessParams params = params_base;
    params.a0_max = a0;
    const ContinuousGame game = make_wireless_game(params);
    const ContinuousEquilibrium eq = intervention_equilibrium(
        game, profile_grid_step, closed_form_deviation_oracle(params));
    rows.push_back({a0, eq.value});
  }
  return rows;
}

AffineRule eq4_rule(const WirelessParams& params) {
  params.validate();
  Vec target = Vec::Constant(params.num_users, params.a_social());
  Vec rates = Vec::Constant(params.num_users, params.num_users - 1.0);
  return AffineRule(std::move(target), std::move(rates), 0.0, params.a0_max);
}

std::vector<Fig6Row> fig6_data(const WirelessParams& params,
                               const std::vector<double>& a_i_values) {
  params.validate();
  if (params.num_users != 2) {
    throw ValidationError("fig6_data: defined for N = 2");
  }
  const AffineRule rule = eq4_rule(params);
  std::vector<Fig6Row> rows;
  Vec a(2);
  a[1] = params.a_social();
  for (double ai : a_i_values) {
    a[0] = ai;
    rows.push_back({ai, user_payoff(params, 0, rule(a), a),
                    user_payoff(params, 0, 0.0, a)});
  }
  return rows;
}

std::string region_csv(const WirelessParams& params, int points_per_axis) {
  params.validate();
  if (params.num_users != 2) {
    throw ValidationError("region_csv: defined for N = 2");
  }
  std::ostringstream out;
  out.precision(12);
  out << "a1,a2,member\n";
  const int n = points_per_axis;
  std::vector<std::string> lines(static_cast<std::size_t>(n) * n);
  parallel_for(n * n, [&](int flat) {
    Vec a(2);
    a[0] = params.user_max * (flat / n) / (n - 1.0);
    a[1] = params.user_max * (flat % n) / (n - 1.0);
    std::ostringstream line;
    line.precision(12);
    line << a[0] << ',' << a[1] << ','
         << (in_E_star_closed_form(params, a) ? 1 : 0) << '\n';
    lines[flat] = line.str();
  });
  for (const std::string& line : lines) out << line;
  return out.str();
}

std::string fig6_csv(const std::vector<Fig6Row>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "a_i,u_with_rule,u_no_intervention\n";
  for (const Fig6Row& row : rows) {
    out << row.a_i << ',' << row.u_with_rule << ',' << row.u_no_intervention
        << '\n';
  }
  return out.str();
}

}  // namespace ivg
