// Acceptance suite: one check per criterion, each printing a PASS/FAIL line.
// Exit status is the number of failed criteria.

#include "ivg/imperfect_example.hpp"
#include "ivg/perfect_game.hpp"
#include "ivg/rule_search.hpp"
#include "ivg/wireless_example.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ivg;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

ImperfectParams imperfect_with_p(double p) {
  ImperfectParams params;
  params.p = p;
  return params;
}

WirelessParams wireless_with_a0(double a0) {
  WirelessParams params;
  params.a0_max = a0;
  return params;
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Criterion 1: closed-form classification across the three regimes.
void criterion1() {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  bool pass = true;

  struct Expect {
    double p;
    FormulaTag formula_attained;
    double v_star;
  };
  const std::vector<Expect> table = {
      {0.9, FormulaTag::kVTilde, 4.284},
      {0.94, FormulaTag::kMaxTildeWAlphaBar, 0.0},
      {0.96, FormulaTag::kMaxTildeW1, 0.0},
  };
  for (const Expect& e : table) {
    const ImperfectParams params = imperfect_with_p(e.p);
    const auto [label, v_star] = classify(params);
    double expect = e.v_star;
    if (e.p == 0.94) expect = w0(params, alpha_bar(params));
    if (e.p == 0.96) expect = w0(params, 1.0);
    if (label.attained != e.formula_attained || !close(v_star, expect, 1e-6)) {
      pass = false;
    }
    detail << "p=" << e.p << " v*=" << v_star << "; ";
  }
  // Pinned numeric anchors for the two computed regimes.
  if (!close(classify(imperfect_with_p(0.94)).second, 4.4819, 5e-4)) pass = false;
  if (!close(classify(imperfect_with_p(0.96)).second, 4.80808, 1e-5)) pass = false;

  const double elapsed = seconds_since(start);
  if (elapsed >= 1.0) pass = false;
  detail << "elapsed=" << elapsed << "s";
  report(1, "closed-form classification", pass, detail.str());
}

// Criterion 2: the grid/bisection search reproduces the closed forms.
void criterion2() {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  bool pass = true;

  SolveOptions options;
  options.rule_grid_step = 0.02;
  options.profile_grid_step = 0.01;
  options.symmetric_profiles = true;
  for (double p : {0.9, 0.94, 0.96}) {
    const ImperfectParams params = imperfect_with_p(p);
    const double oracle = classify(params).second;
    const EquilibriumSummary summary = solve(make_imperfect_game(params), options);
    if (!close(summary.v_star, oracle, 2e-3)) pass = false;
    detail << "p=" << p << " search=" << summary.v_star
           << " closed=" << oracle << "; ";
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 30.0) pass = false;
  detail << "elapsed=" << elapsed << "s";
  report(2, "search matches closed forms", pass, detail.str());
}

// Criterion 3: the performance gap formula and its certificate.
void criterion3() {
  std::ostringstream detail;
  bool pass = true;

  const ImperfectParams params = imperfect_with_p(0.96);
  const double y_q = params.y_of(params.q);
  const double y_p = params.y_of(params.p);
  const double expect = (1 - params.p) * params.a_low *
                        (y_q * params.a_high - y_p * params.a_low) /
                        ((1 - params.q) * params.a_high -
                         (1 - params.p) * params.a_low);
  const double gap = gap_closed_form(params);
  if (!close(gap, expect, 1e-9)) pass = false;
  if (!close(params.v_bar() - classify(params).second, gap, 1e-9)) pass = false;
  if (!close(gap, 0.03192, 5e-5)) pass = false;

  SolveOptions options;
  options.rule_grid_step = 0.02;
  options.profile_grid_step = 0.01;
  options.symmetric_profiles = true;
  const FiniteInterventionGame game = make_imperfect_game(params);
  const auto cert = gap_certificate(game, solve(game, options));
  if (!cert.has_value()) pass = false;

  detail << "gap=" << gap << " certificate=" << (cert ? "yes" : "no");
  report(3, "performance gap", pass, detail.str());
}

// Criterion 4: capability thresholds and the monotone performance curve.
void criterion4() {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  bool pass = true;

  const WirelessParams params = wireless_with_a0(0.0);
  const WirelessBenchmarks b = benchmarks(params);
  const double threshold = a0_min(params);
  if (b.a_social != 3.0 || b.a_nash != 4.0 || b.v_bar != 18.0 ||
      b.v_tilde != 16.0) {
    pass = false;
  }
  if (!close(threshold, 9.0 - 6.0 * std::sqrt(2.0), 1e-12) ||
      !close(threshold, 0.51472, 5e-6)) {
    pass = false;
  }

  std::vector<double> a0s;
  for (int k = 0; k < 6; ++k) a0s.push_back(threshold * k / 5.0);
  a0s.push_back(0.52);
  const auto rows = v_star_curve(params, a0s, 0.2);
  for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
    if (!(rows[k].v_star > rows[k - 1].v_star)) pass = false;
  }
  if (!close(rows.back().v_star, 18.0, 0.05)) pass = false;

  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0) pass = false;
  detail << "a0_min=" << threshold << " v*(0.52)=" << rows.back().v_star
         << " elapsed=" << elapsed << "s";
  report(4, "capability thresholds", pass, detail.str());
}

// Criterion 5: sustainable-region grids expand with capability and the two
// membership checks agree away from the boundary.
void criterion5() {
  std::ostringstream detail;
  bool pass = true;

  const std::vector<double> levels = {0.0, 0.1, 0.51, 5.0};
  const int kGrid = 61;
  std::vector<std::vector<bool>> members;
  for (double a0 : levels) {
    const WirelessParams params = wireless_with_a0(a0);
    std::vector<bool> grid(kGrid * kGrid);
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        grid[i * kGrid + j] = in_E_star_closed_form(
            params, vec2(12.0 * i / (kGrid - 1.0), 12.0 * j / (kGrid - 1.0)));
      }
    }
    members.push_back(std::move(grid));
  }
  for (std::size_t k = 1; k < members.size(); ++k) {
    for (int cell = 0; cell < kGrid * kGrid; ++cell) {
      if (members[k - 1][cell] && !members[k][cell]) pass = false;
    }
  }

  // At zero capability exactly the Nash point and saturation survive: grid
  // coordinates are multiples of 0.2, so (4,4) and (12,12) are cells 20/60.
  int count0 = 0;
  for (int cell = 0; cell < kGrid * kGrid; ++cell) count0 += members[0][cell];
  if (count0 != 2 || !members[0][20 * kGrid + 20] ||
      !members[0][60 * kGrid + 60]) {
    pass = false;
  }
  const WirelessParams small = wireless_with_a0(0.1);
  if (in_E_star_closed_form(small, vec2(3.0, 3.0))) pass = false;

  // Closed-form vs. search-based membership, skipping boundary cells.
  int disagreements = 0, compared = 0;
  {
    const WirelessParams params = wireless_with_a0(0.51);
    const ContinuousGame game = make_wireless_game(params);
    const DeviationOracle closed = closed_form_deviation_oracle(params);
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const Vec a = vec2(12.0 * i / (kGrid - 1.0), 12.0 * j / (kGrid - 1.0));
        bool near_boundary = false;
        for (int user = 0; user < 2; ++user) {
          const double margin =
              quality(params, 0.0, a) * a[user] - closed(user, a);
          if (margin != 0.0 && std::abs(margin) < 1e-6) {
            near_boundary = true;
          }
        }
        if (near_boundary) continue;
        ++compared;
        if (in_E_star_closed_form(params, a) != in_E_star(game, a)) {
          ++disagreements;
        }
      }
    }
  }
  if (disagreements != 0 || compared < 3000) pass = false;

  detail << "zero-capability members=" << count0
         << " compared=" << compared << " disagreements=" << disagreements;
  report(5, "sustainable regions", pass, detail.str());
}

// Criterion 6: the affine rule realigns the best response with the target.
void criterion6() {
  std::ostringstream detail;
  bool pass = true;

  const WirelessParams params = wireless_with_a0(5.0);
  std::vector<double> samples;
  for (int k = 0; k <= 120; ++k) samples.push_back(k * 0.1);
  const auto rows = fig6_data(params, samples);
  std::size_t best_rule = 0, best_free = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].u_with_rule > rows[best_rule].u_with_rule) best_rule = k;
    if (rows[k].u_no_intervention > rows[best_free].u_no_intervention) {
      best_free = k;
    }
  }
  if (std::abs(rows[best_rule].a_i - 3.0) > 0.1 + 1e-12) pass = false;
  if (std::abs(rows[best_free].a_i - 4.5) > 0.1 + 1e-12) pass = false;
  if (!close(rows[best_free].u_no_intervention, 20.25, 1e-9)) pass = false;

  detail << "argmax under rule=" << rows[best_rule].a_i
         << " without=" << rows[best_free].a_i
         << " value=" << rows[best_free].u_no_intervention;
  report(6, "affine rule best response", pass, detail.str());
}

// Criterion 7: property suites.
void criterion7() {
  std::ostringstream detail;
  bool pass = true;

  // Existence plus benchmark ordering on random finite games where the
  // manager strictly prefers no intervention.
  {
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SolveOptions options;
    options.rule_grid_step = 0.2;
    options.profile_grid_step = 0.25;
    int witnessed = 0;
    for (int trial = 0; trial < 50; ++trial) {
      Mat dist(4, 2);
      for (int a = 0; a < 4; ++a) {
        const double p = 0.05 + 0.9 * unit(rng);
        dist.row(a) << p, 1.0 - p;
      }
      std::vector<Vec> payoffs(3, Vec::Zero(16));
      for (int a = 0; a < 4; ++a) {
        for (int y = 0; y < 2; ++y) {
          payoffs[0][(0 * 4 + a) * 2 + y] = 1.0 + unit(rng);
          payoffs[0][(1 * 4 + a) * 2 + y] = 0.9 * unit(rng);
          for (int who = 1; who < 3; ++who) {
            payoffs[who][(0 * 4 + a) * 2 + y] = 2.0 * unit(rng) - 1.0;
            payoffs[who][(1 * 4 + a) * 2 + y] = 2.0 * unit(rng) - 1.0;
          }
        }
      }
      const FiniteInterventionGame game({{"a", "b"}, {"a", "b"}}, {"p", "i"},
                                        {"hi", "lo"}, dist, payoffs, "p");
      const EquilibriumSummary summary = solve(game, options);
      if (!sustains(game, summary.witness_star.rule, summary.witness_star.profile,
                    1e-7)) {
        pass = false;
      }
      if (summary.v_tilde > summary.v_star + 1e-9 ||
          summary.v_star > summary.v_bar + 1e-9) {
        pass = false;
      }
      ++witnessed;
    }
    detail << "random finite games=" << witnessed << "; ";
  }

  // Anything sustained by some tabulated rule survives its own extreme rule,
  // on random concave-quadratic continuous games with grid deviations.
  {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int kGrid = 9;
    int sustained_total = 0;
    for (int trial = 0; trial < 30; ++trial) {
      const double t0 = 0.2 + 0.6 * unit(rng);
      const double t1 = 0.2 + 0.6 * unit(rng);
      const double cross = unit(rng) - 0.5;
      const double d0 = 0.1 + 0.9 * unit(rng);
      const double d1 = 0.1 + 0.9 * unit(rng);
      auto u0 = [=](double a0, const Vec& a) {
        return -(a[0] - t0) * (a[0] - t0) + cross * a[0] * a[1] - d0 * a0;
      };
      auto u1 = [=](double a0, const Vec& a) {
        return -(a[1] - t1) * (a[1] - t1) + cross * a[0] * a[1] - d1 * a0;
      };
      const ContinuousGame game({{0.0, 1.0}, {0.0, 1.0}}, {0.0, 1.0}, {u0, u1},
                                [](double, const Vec&) { return 0.0; });
      Mat table(kGrid, kGrid);
      for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) table(i, j) = unit(rng);
      }
      const auto coord = [&](int k) { return k / (kGrid - 1.0); };
      const DeviationOracle grid_oracle = [&](int user, const Vec& profile) {
        const ExtremeRule extreme = extreme_rule(game, profile);
        double best = -1e300;
        for (int k = 0; k < kGrid; ++k) {
          Vec dev = profile;
          dev[user] = coord(k);
          best = std::max(best, game.user_payoff(user, extreme(dev), dev));
        }
        return best;
      };
      for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
          Vec profile = vec2(coord(i), coord(j));
          bool sustained = true;
          for (int user = 0; user < 2 && sustained; ++user) {
            const double on_path = game.user_payoff(user, table(i, j), profile);
            for (int k = 0; k < kGrid; ++k) {
              Vec dev = profile;
              dev[user] = coord(k);
              const int di = user == 0 ? k : i;
              const int dj = user == 1 ? k : j;
              if (game.user_payoff(user, table(di, dj), dev) > on_path + 1e-9) {
                sustained = false;
                break;
              }
            }
          }
          if (sustained) {
            ++sustained_total;
            if (!in_E_star(game, profile, grid_oracle, 1e-9)) pass = false;
          }
        }
      }
    }
    if (sustained_total == 0) pass = false;
    detail << "extreme-rule survivals=" << sustained_total << "; ";
  }

  // Finite-difference intervention rates match the closed form, and the
  // second-order sustainment check passes at the social optimum.
  for (int n : {2, 3}) {
    WirelessParams params;
    params.num_users = n;
    params.a0_max = 20.0;
    const ContinuousGame game = make_wireless_game(params);
    const Vec target = Vec::Constant(n, params.a_social());
    const Vec rates = affine_rate(game, target);
    for (int i = 0; i < n; ++i) {
      const double symbolic =
          params.quality_intercept / (params.quality_slope * target[i]) -
          (target.sum() - target[i]) / target[i] - 2.0;
      if (std::abs(rates[i] - symbolic) > 1e-6 * std::abs(symbolic)) {
        pass = false;
      }
      if (std::abs(symbolic - (n - 1.0)) > 1e-12) pass = false;
    }
    if (!affine_sustains_check(game, target, rates).all_pass) pass = false;
  }
  detail << "rate checks N=2,3 done";

  report(7, "property suites", pass, detail.str());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  return failures;
}
