#include "ivg/perfect_game.hpp"

#include "ivg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ivg {

namespace {

constexpr double kGolden = 0.6180339887498949;  // 1/phi

}  // namespace

std::pair<double, double> golden_section_min(
    const std::function<double(double)>& f, double lo, double hi,
    double bracket) {
  if (hi < lo) throw ValidationError("golden_section_min: hi < lo");
  double best_x = lo, best_f = f(lo);
  const double f_hi = f(hi);
  if (f_hi < best_f) {
    best_x = hi;
    best_f = f_hi;
  }
  if (hi - lo <= bracket) return {best_x, best_f};

  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > bracket) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (fm < best_f) return {xm, fm};
  return {best_x, best_f};
}

std::pair<double, double> golden_section_max(
    const std::function<double(double)>& f, double lo, double hi,
    double bracket) {
  auto [x, v] = golden_section_min([&](double t) { return -f(t); }, lo, hi,
                                   bracket);
  return {x, -v};
}

ContinuousGame::ContinuousGame(std::vector<std::array<double, 2>> user_intervals,
                               std::array<double, 2> intervention_interval,
                               std::vector<Payoff> user_payoffs,
                               Payoff manager_payoff)
    : user_intervals_(std::move(user_intervals)),
      intervention_interval_(intervention_interval),
      user_payoffs_(std::move(user_payoffs)),
      manager_payoff_(std::move(manager_payoff)) {
  if (user_intervals_.empty()) {
    throw ValidationError("continuous game: at least one user required");
  }
  for (const auto& iv : user_intervals_) {
    if (!(iv[0] < iv[1])) {
      throw ValidationError("continuous game: user interval must satisfy lo < hi");
    }
  }
  if (intervention_interval_[0] > intervention_interval_[1]) {
    throw ValidationError("continuous game: intervention interval must satisfy lo <= hi");
  }
  if (user_payoffs_.size() != user_intervals_.size() || !manager_payoff_) {
    throw ValidationError("continuous game: one payoff callable per participant");
  }

  // Spot check: the low intervention endpoint weakly dominates every
  // intervention level for every participant, on a 5-point grid per
  // dimension; payoffs must be finite on the box.
  const int n = num_users();
  std::vector<int> radix(n, 5);
  std::vector<int> idx(n, 0);
  Vec a(n);
  do {
    for (int i = 0; i < n; ++i) {
      a[i] = user_lo(i) + (user_hi(i) - user_lo(i)) * idx[i] / 4.0;
    }
    for (int k = 0; k < 5; ++k) {
      const double a0 = a0_lo() + (a0_hi() - a0_lo()) * k / 4.0;
      for (int i = 0; i <= n; ++i) {
        const double u = i == 0 ? manager_payoff_(a0, a) : user_payoffs_[i - 1](a0, a);
        if (!std::isfinite(u)) {
          throw ValidationError("continuous game: non-finite payoff on the action box");
        }
        const double u_lo =
            i == 0 ? manager_payoff_(a0_lo(), a) : user_payoffs_[i - 1](a0_lo(), a);
        if (u > u_lo + 1e-9) {
          std::ostringstream msg;
          msg << "continuous game: intervention level " << a0
              << " improves participant " << i
              << "'s payoff over the low endpoint at a spot-check profile";
          throw ValidationError(msg.str());
        }
      }
    }
  } while (next_multi_index(idx, radix));
}

ExtremeRule::ExtremeRule(const ContinuousGame* game, Vec target)
    : game_(game), target_(std::move(target)) {
  if (target_.size() != game_->num_users()) {
    throw ValidationError("extreme rule: target size mismatch");
  }
  for (int i = 0; i < game_->num_users(); ++i) {
    if (target_[i] < game_->user_lo(i) - 1e-12 ||
        target_[i] > game_->user_hi(i) + 1e-12) {
      throw ValidationError("extreme rule: target outside the action box");
    }
  }
}

double ExtremeRule::punishment(int i, const Vec& a) const {
  auto [argmin, value] = golden_section_min(
      [&](double a0) { return game_->user_payoff(i, a0, a); }, game_->a0_lo(),
      game_->a0_hi());
  (void)value;
  return argmin;
}

double ExtremeRule::operator()(const Vec& a) const {
  int deviator = -1;
  for (int i = 0; i < game_->num_users(); ++i) {
    if (std::abs(a[i] - target_[i]) > 1e-12) {
      if (deviator >= 0) return game_->a0_lo();  // not unilateral
      deviator = i;
    }
  }
  if (deviator < 0) return game_->a0_lo();
  return punishment(deviator, a);
}

ExtremeRule extreme_rule(const ContinuousGame& game, const Vec& target) {
  return ExtremeRule(&game, target);
}

DeviationOracle default_deviation_oracle(const ContinuousGame& game) {
  const ContinuousGame* g = &game;
  return [g](int user, const Vec& profile) {
    constexpr int kGridPoints = 2001;
    const double lo = g->user_lo(user), hi = g->user_hi(user);
    Vec a = profile;
    auto punished_payoff = [&](double ai) {
      a[user] = ai;
      return golden_section_min(
                 [&](double a0) { return g->user_payoff(user, a0, a); },
                 g->a0_lo(), g->a0_hi())
          .second;
    };
    double best_x = lo, best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < kGridPoints; ++k) {
      const double ai = lo + (hi - lo) * k / (kGridPoints - 1.0);
      const double v = punished_payoff(ai);
      if (v > best) {
        best = v;
        best_x = ai;
      }
    }
    const double cell = (hi - lo) / (kGridPoints - 1.0);
    auto [x, v] = golden_section_max(punished_payoff,
                                     std::max(lo, best_x - cell),
                                     std::min(hi, best_x + cell));
    (void)x;
    return std::max(best, v);
  };
}

bool in_E_star(const ContinuousGame& game, const Vec& profile,
               const DeviationOracle& oracle, double tolerance) {
  for (int i = 0; i < game.num_users(); ++i) {
    if (game.user_payoff(i, game.a0_lo(), profile) <
        oracle(i, profile) - tolerance) {
      return false;
    }
  }
  return true;
}

bool in_E_star(const ContinuousGame& game, const Vec& profile,
               double tolerance) {
  return in_E_star(game, profile, default_deviation_oracle(game), tolerance);
}

namespace {

std::vector<double> axis_points(double lo, double hi, double step) {
  std::vector<double> pts;
  for (double x = lo; x < hi + step * 0.5; x += step) pts.push_back(std::min(x, hi));
  if (pts.empty() || pts.back() < hi - 1e-12) pts.push_back(hi);
  return pts;
}

// Approximate pure Nash of the no-intervention game on the profile grid:
// no user improves by moving to another grid point on its own axis.
ContinuousEquilibrium grid_nash_fallback(
    const ContinuousGame& game, const std::vector<std::vector<double>>& axes) {
  const int n = game.num_users();
  std::vector<int> sizes(n);
  for (int i = 0; i < n; ++i) sizes[i] = static_cast<int>(axes[i].size());
  std::vector<int> idx(n, 0);
  ContinuousEquilibrium best{Vec(), -std::numeric_limits<double>::infinity()};
  Vec a(n);
  do {
    for (int i = 0; i < n; ++i) a[i] = axes[i][idx[i]];
    bool stable = true;
    for (int i = 0; i < n && stable; ++i) {
      const double own = game.user_payoff(i, game.a0_lo(), a);
      Vec dev = a;
      for (double alt : axes[i]) {
        dev[i] = alt;
        if (game.user_payoff(i, game.a0_lo(), dev) > own + 1e-9) {
          stable = false;
          break;
        }
      }
    }
    if (stable) {
      const double value = game.manager_payoff(game.a0_lo(), a);
      if (value > best.value + 1e-12) best = {a, value};
    }
  } while (next_multi_index(idx, sizes));
  if (!best.profile.size()) {
    throw InternalError("intervention_equilibrium: fallback found no grid Nash point");
  }
  return best;
}

}  // namespace

ContinuousEquilibrium intervention_equilibrium(const ContinuousGame& game,
                                               double profile_grid_step,
                                               const DeviationOracle& oracle) {
  if (!(profile_grid_step > 0.0)) {
    throw ValidationError("intervention_equilibrium: grid step must be > 0");
  }
  const int n = game.num_users();
  std::vector<std::vector<double>> axes(n);
  std::vector<int> sizes(n);
  long total = 1;
  for (int i = 0; i < n; ++i) {
    axes[i] = axis_points(game.user_lo(i), game.user_hi(i), profile_grid_step);
    sizes[i] = static_cast<int>(axes[i].size());
    total *= sizes[i];
  }

  std::vector<double> values(total,
                             -std::numeric_limits<double>::infinity());
  parallel_for(static_cast<int>(total), [&](int flat) {
    Vec a(n);
    int rem = flat;
    for (int i = n - 1; i >= 0; --i) {
      a[i] = axes[i][rem % sizes[i]];
      rem /= sizes[i];
    }
    if (in_E_star(game, a, oracle)) {
      values[flat] = game.manager_payoff(game.a0_lo(), a);
    }
  });

  long best_flat = -1;
  for (long flat = 0; flat < total; ++flat) {
    if (std::isfinite(values[flat]) &&
        (best_flat < 0 || values[flat] > values[best_flat] + 1e-12)) {
      best_flat = flat;
    }
  }
  if (best_flat < 0) return grid_nash_fallback(game, axes);

  Vec best(n);
  {
    long rem = best_flat;
    for (int i = n - 1; i >= 0; --i) {
      best[i] = axes[i][rem % sizes[i]];
      rem /= sizes[i];
    }
  }
  double best_value = values[best_flat];

  // Local coordinate search staying inside the sustainable set.
  double step = profile_grid_step / 2.0;
  while (step >= 1e-6) {
    bool improved = false;
    for (int i = 0; i < n; ++i) {
      for (double dir : {step, -step}) {
        Vec candidate = best;
        candidate[i] = std::clamp(candidate[i] + dir, game.user_lo(i),
                                  game.user_hi(i));
        if (candidate[i] == best[i]) continue;
        const double value = game.manager_payoff(game.a0_lo(), candidate);
        if (value > best_value + 1e-12 && in_E_star(game, candidate, oracle)) {
          best = candidate;
          best_value = value;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2.0;
  }
  return {best, best_value};
}

ContinuousEquilibrium intervention_equilibrium(const ContinuousGame& game,
                                               double profile_grid_step) {
  return intervention_equilibrium(game, profile_grid_step,
                                  default_deviation_oracle(game));
}

AffineRule::AffineRule(Vec target, Vec rates, double a0_lo, double a0_hi)
    : target_(std::move(target)),
      rates_(std::move(rates)),
      a0_lo_(a0_lo),
      a0_hi_(a0_hi) {
  if (target_.size() != rates_.size()) {
    throw ValidationError("affine rule: target/rates size mismatch");
  }
}

double AffineRule::operator()(const Vec& a) const {
  const double level = rates_.dot(a - target_) + a0_lo_;
  return std::clamp(level, a0_lo_, a0_hi_);
}

namespace {

// Central first/second differences with the stencil shifted to stay inside
// [lo, hi]; the derivative is then taken at the shifted center, which is
// within one step of the requested point.
double shifted_center(double x, double lo, double hi, double h) {
  return std::clamp(x, lo + h, hi - h);
}

}  // namespace

Vec affine_rate(const ContinuousGame& game, const Vec& target,
                double derivative_step_rel) {
  const int n = game.num_users();
  if (target.size() != n) throw ValidationError("affine_rate: target size mismatch");
  for (int i = 0; i < n; ++i) {
    if (!(target[i] > game.user_lo(i) && target[i] < game.user_hi(i))) {
      throw ValidationError(
          "affine_rate: target must be interior in every user coordinate");
    }
  }
  const double a0_len = game.a0_hi() - game.a0_lo();
  if (!(a0_len > 0.0)) {
    throw ValidationError("affine_rate: degenerate intervention interval");
  }

  Vec rates(n);
  const double h0 = 1e-6 * a0_len;
  for (int i = 0; i < n; ++i) {
    // Monotone decrease in a0 at the target, by sampled differences: strictly
    // decreasing from the low endpoint, with a flat tail allowed (payoffs may
    // saturate at zero before the intervention interval ends).
    const double at_lo = game.user_payoff(i, game.a0_lo(), target);
    double prev = at_lo;
    for (int k = 1; k <= 10; ++k) {
      const double a0 = game.a0_lo() + a0_len * k / 10.0;
      const double u = game.user_payoff(i, a0, target);
      if (u > prev || (k == 1 && u >= prev)) {
        throw ValidationError(
            "affine_rate: user payoff is not strictly decreasing in the "
            "intervention level at the target");
      }
      prev = u;
    }

    const double hi_step = derivative_step_rel *
                           (game.user_hi(i) - game.user_lo(i));
    Vec up = target, down = target;
    up[i] += hi_step;
    down[i] -= hi_step;
    const double dui_dai =
        (game.user_payoff(i, game.a0_lo(), up) -
         game.user_payoff(i, game.a0_lo(), down)) /
        (2.0 * hi_step);
    const double dui_da0 =
        (game.user_payoff(i, game.a0_lo() + h0, target) -
         game.user_payoff(i, game.a0_lo(), target)) /
        h0;
    if (std::abs(dui_da0) < 1e-10) {
      throw ValidationError(
          "affine_rate: intervention-level derivative is numerically zero");
    }
    rates[i] = -dui_dai / dui_da0;
  }
  return rates;
}

ConditionReport affine_sustains_check(const ContinuousGame& game,
                                      const Vec& target, const Vec& rates,
                                      double derivative_step_rel) {
  const int n = game.num_users();
  if (target.size() != n || rates.size() != n) {
    throw ValidationError("affine_sustains_check: size mismatch");
  }
  const double a0_lo = game.a0_lo(), a0_hi = game.a0_hi();
  const double a0_len = a0_hi - a0_lo;
  constexpr int kSamples = 201;
  constexpr double kMarginTol = 1e-6;

  ConditionReport report;
  auto add_item = [&](const std::string& name, int user, double worst) {
    const bool pass = worst <= kMarginTol;
    report.items.push_back({name, user, pass, worst});
    report.all_pass = report.all_pass && pass;
  };

  for (int i = 0; i < n; ++i) {
    const double c = rates[i];
    const double lo = game.user_lo(i), hi = game.user_hi(i);
    const double hi_step = derivative_step_rel * (hi - lo);
    const double h0 = std::max(1e-12, derivative_step_rel * std::max(a0_len, 1.0));

    auto u_at = [&](double a0, double ai) {
      Vec a = target;
      a[i] = ai;
      return game.user_payoff(i, a0, a);
    };
    auto d1_ai = [&](double a0, double ai) {
      const double x = shifted_center(ai, lo, hi, hi_step);
      return (u_at(a0, x + hi_step) - u_at(a0, x - hi_step)) / (2.0 * hi_step);
    };
    auto d2_ai = [&](double a0, double ai) {
      const double x = shifted_center(ai, lo, hi, hi_step);
      return (u_at(a0, x + hi_step) - 2.0 * u_at(a0, x) + u_at(a0, x - hi_step)) /
             (hi_step * hi_step);
    };
    auto d2_a0 = [&](double a0, double ai) {
      if (a0_len <= 2.0 * h0) return 0.0;
      const double x0 = shifted_center(a0, a0_lo, a0_hi, h0);
      return (u_at(x0 + h0, ai) - 2.0 * u_at(x0, ai) + u_at(x0 - h0, ai)) /
             (h0 * h0);
    };
    auto d2_cross = [&](double a0, double ai) {
      if (a0_len <= 2.0 * h0) return 0.0;
      const double x0 = shifted_center(a0, a0_lo, a0_hi, h0);
      const double xi = shifted_center(ai, lo, hi, hi_step);
      return (u_at(x0 + h0, xi + hi_step) - u_at(x0 + h0, xi - hi_step) -
              u_at(x0 - h0, xi + hi_step) + u_at(x0 - h0, xi - hi_step)) /
             (4.0 * h0 * hi_step);
    };
    auto quadratic_form = [&](double ai) {
      const double a0 = std::clamp(c * (ai - target[i]) + a0_lo, a0_lo, a0_hi);
      return c * c * d2_a0(a0, ai) + 2.0 * c * d2_cross(a0, ai) + d2_ai(a0, ai);
    };

    // Worst (most positive) violation of `condition <= 0` sampled over the
    // open interval; an interval with lower >= upper is empty and passes
    // vacuously, noted in the item name.
    auto sample_worst = [&](const std::function<double(double)>& violation,
                            double a, double b, const std::string& name) {
      if (a >= b) {
        add_item(name + " (empty interval)", i,
                 -std::numeric_limits<double>::infinity());
        return;
      }
      double worst = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < kSamples; ++k) {
        const double ai = a + (b - a) * (k + 0.5) / kSamples;
        worst = std::max(worst, violation(ai));
      }
      add_item(name, i, worst);
    };

    if (c == 0.0) {
      sample_worst([&](double ai) { return d2_ai(a0_lo, ai); }, lo, hi,
                   "concavity at low intervention (c = 0)");
    } else if (c > 0.0) {
      const double ramp_end = target[i] + a0_len / c;
      sample_worst([&](double ai) { return d2_ai(a0_lo, ai); }, lo, target[i],
                   "concavity below target (c > 0)");
      sample_worst(quadratic_form, target[i], std::min(hi, ramp_end),
                   "second-order form on the ramp (c > 0)");
      sample_worst([&](double ai) { return d1_ai(a0_hi, ai); }, ramp_end, hi,
                   "non-increasing beyond the ramp (c > 0)");
    } else {
      const double ramp_end = target[i] + a0_len / c;  // below the target
      sample_worst([&](double ai) { return -d1_ai(a0_hi, ai); }, lo, ramp_end,
                   "non-decreasing below the ramp (c < 0)");
      sample_worst(quadratic_form, std::max(lo, ramp_end), target[i],
                   "second-order form on the ramp (c < 0, as printed)");
      sample_worst([&](double ai) { return d2_ai(a0_lo, ai); }, target[i], hi,
                   "concavity above target (c < 0)");
    }

    // Independent direct scan: no sampled unilateral deviation under the
    // affine rule beats the target payoff.
    const AffineRule rule(target, rates, a0_lo, a0_hi);
    Vec a = target;
    const double target_payoff = game.user_payoff(i, a0_lo, target);
    double worst = -std::numeric_limits<double>::infinity();
    constexpr int kScan = 2001;
    for (int k = 0; k < kScan; ++k) {
      a[i] = lo + (hi - lo) * k / (kScan - 1.0);
      worst = std::max(worst, game.user_payoff(i, rule(a), a) - target_payoff);
    }
    add_item("direct deviation scan", i, worst);
  }
  return report;
}

bool corollary1_check(const ContinuousGame& game, double profile_grid_step,
                      const DeviationOracle& oracle) {
  const int n = game.num_users();
  std::vector<std::vector<double>> axes(n);
  std::vector<int> sizes(n);
  for (int i = 0; i < n; ++i) {
    axes[i] = axis_points(game.user_lo(i), game.user_hi(i), profile_grid_step);
    sizes[i] = static_cast<int>(axes[i].size());
  }
  // Collect all grid maximizers of the manager's no-intervention payoff; the
  // efficiency condition holds when some maximizer is deviation-proof.
  double best = -std::numeric_limits<double>::infinity();
  std::vector<Vec> maximizers;
  std::vector<int> idx(n, 0);
  Vec a(n);
  do {
    for (int i = 0; i < n; ++i) a[i] = axes[i][idx[i]];
    const double value = game.manager_payoff(game.a0_lo(), a);
    if (value > best + 1e-12) {
      best = value;
      maximizers.clear();
      maximizers.push_back(a);
    } else if (value > best - 1e-12) {
      maximizers.push_back(a);
    }
  } while (next_multi_index(idx, sizes));

  for (const Vec& candidate : maximizers) {
    bool holds = true;
    for (int i = 0; i < n && holds; ++i) {
      if (game.user_payoff(i, game.a0_lo(), candidate) <
          oracle(i, candidate) - 1e-9) {
        holds = false;
      }
    }
    if (holds) return true;
  }
  return false;
}

}  // namespace ivg
