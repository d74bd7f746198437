#include "ivg/imperfect_example.hpp"

#include <cmath>
#include <sstream>

namespace ivg {

namespace {

void fail(const std::string& inequality) {
  throw ValidationError("imperfect example parameters: '" + inequality +
                        "' violated");
}

}  // namespace

void ImperfectParams::validate() const {
  if (!(0.0 < a_low && a_low < a_high)) fail("0 < a_L < a_H");
  if (!(0.0 < y_low && y_low < y_high)) fail("0 < y_lo < y_hi");
  if (!(0.0 < r && r < q && q < p && p < 1.0)) fail("0 < r < q < p < 1");
  const double yp = y_of(p), yq = y_of(q), yr = y_of(r);
  if (!(yq * a_high > yp * a_low)) fail("y_q a_H > y_p a_L");
  if (!(yp * a_low > yr * a_high)) fail("y_p a_L > y_r a_H");
  if (!(yr * a_high > yq * a_low)) fail("y_r a_H > y_q a_L");
  if (!(2.0 * yp * a_low > yq * (a_high + a_low))) {
    fail("2 y_p a_L > y_q (a_H + a_L)");
  }
}

double w0(const ImperfectParams& params, double alpha) {
  if (alpha < 0.0 || alpha > 1.0) {
    throw ValidationError("w0: alpha must lie in [0, 1]");
  }
  if (alpha == 0.0) return params.v_tilde();
  if (params.sensitivity(alpha) < 0.0) return 0.0;
  const double numerator =
      ((params.q - params.r) +
       alpha * ((params.p - params.q) - (params.q - params.r))) *
      params.a_high * params.a_low;
  const double denominator =
      ((1.0 - params.r) * params.a_high - (1.0 - params.q) * params.a_low) +
      alpha * (params.x_term() - params.z_term());
  return numerator / denominator * params.y_high;
}

FiniteInterventionRule attaining_rule(const ImperfectParams& params,
                                      double alpha) {
  if (alpha < 0.0 || alpha > 1.0) {
    throw ValidationError("attaining_rule: alpha must lie in [0, 1]");
  }
  Mat m(2, 2);  // rows: (high signal, low signal); cols: (pass, intervene)
  if (alpha == 0.0) {
    m << 1.0, 0.0, 1.0, 0.0;
    return FiniteInterventionRule(std::move(m));
  }
  if (params.sensitivity(alpha) < 0.0) {
    m << 0.0, 1.0, 0.0, 1.0;
    return FiniteInterventionRule(std::move(m));
  }
  const double denominator =
      ((1.0 - params.r) * params.a_high - (1.0 - params.q) * params.a_low) +
      alpha * (params.x_term() - params.z_term());
  const double f_low = (params.z_term() + alpha * (params.x_term() - params.z_term())) /
                       denominator * params.y_high / params.y_low;
  if (f_low < -1e-12 || f_low > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "attaining_rule: pass probability on the low signal is " << f_low
        << ", outside [0, 1]; parameters are outside the admissible regime";
    throw InternalError(msg.str());
  }
  const double clamped = std::min(std::max(f_low, 0.0), 1.0);
  m << 1.0, 0.0, clamped, 1.0 - clamped;
  return FiniteInterventionRule(std::move(m));
}

double alpha_bar(const ImperfectParams& params) {
  const double denominator = params.z_term() - params.x_term();
  if (denominator == 0.0) {
    throw ValidationError(
        "alpha_bar: undefined when the two sensitivity terms coincide");
  }
  return params.z_term() / denominator;
}

std::pair<CaseLabel, double> classify(const ImperfectParams& params) {
  params.validate();
  const double x = params.x_term();
  const double z = params.z_term();
  const double d = params.slope_sign_term();
  const double v_tilde = params.v_tilde();

  auto resolve = [&](char label, FormulaTag formula, double candidate,
                     bool boundary = false) {
    const double v_star = std::max(v_tilde, candidate);
    const FormulaTag attained =
        candidate > v_tilde ? formula : FormulaTag::kVTilde;
    return std::make_pair(CaseLabel{label, formula, attained, boundary}, v_star);
  };

  if (x < 0.0 && z < 0.0) {
    return {CaseLabel{'a', FormulaTag::kVTilde, FormulaTag::kVTilde, false},
            v_tilde};
  }
  if (x < z && d <= 0.0) {
    return {CaseLabel{'b', FormulaTag::kVTilde, FormulaTag::kVTilde, false},
            v_tilde};
  }
  if (x >= z && z >= 0.0) {
    // x == z with d <= 0 sits on the boundary of the printed case list; the
    // monotonicity argument still gives max{v_tilde, w0(1)}.
    return resolve('c', FormulaTag::kMaxTildeW1, w0(params, 1.0),
                   x == z && d <= 0.0);
  }
  if (x >= 0.0 && z < 0.0) {
    return resolve('d', FormulaTag::kMaxTildeW1, w0(params, 1.0));
  }
  if (x >= 0.0 && x < z && d > 0.0) {
    return resolve('e', FormulaTag::kMaxTildeW1, w0(params, 1.0));
  }
  // Remaining: x < 0 <= z with d > 0.
  return resolve('f', FormulaTag::kMaxTildeWAlphaBar,
                 w0(params, alpha_bar(params)));
}

double gap_closed_form(const ImperfectParams& params) {
  const double yp = params.y_of(params.p), yq = params.y_of(params.q);
  return (1.0 - params.p) * params.a_low *
         (yq * params.a_high - yp * params.a_low) /
         ((1.0 - params.q) * params.a_high - (1.0 - params.p) * params.a_low);
}

std::vector<Fig4Row> fig4_data(const ImperfectParams& params,
                               double alpha_step) {
  if (!(alpha_step > 0.0 && alpha_step <= 0.5)) {
    throw ValidationError("fig4_data: alpha_step must lie in (0, 0.5]");
  }
  const double v_bar = params.v_bar();
  std::vector<Fig4Row> rows;
  const int steps = static_cast<int>(std::round(1.0 / alpha_step));
  for (int k = 0; k <= steps; ++k) {
    const double alpha = std::min(1.0, k * alpha_step);
    rows.push_back({alpha, w0(params, alpha), v_bar});
  }
  return rows;
}

std::string fig4_csv(const std::vector<Fig4Row>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "alpha,w0,v_bar\n";
  for (const Fig4Row& row : rows) {
    out << row.alpha << ',' << row.w0_value << ',' << row.v_bar << '\n';
  }
  return out.str();
}

FiniteInterventionGame make_imperfect_game(const ImperfectParams& params) {
  params.validate();
  const std::vector<std::string> acts = {"low", "high"};
  const std::vector<std::string> a0 = {"pass", "intervene"};
  const std::vector<std::string> sig = {"quality_high", "quality_low"};
  const double usage[2] = {params.a_low, params.a_high};

  // Flat profile order: (low,low), (low,high), (high,low), (high,high).
  Mat dist(4, 2);
  const double probs[4] = {params.p, params.q, params.q, params.r};
  for (int a = 0; a < 4; ++a) {
    dist(a, 0) = probs[a];
    dist(a, 1) = 1.0 - probs[a];
  }

  std::vector<Vec> payoffs(3, Vec::Zero(2 * 4 * 2));
  const double quality[2] = {params.y_high, params.y_low};
  for (int a0i = 0; a0i < 2; ++a0i) {
    for (int a = 0; a < 4; ++a) {
      const int act1 = a / 2, act2 = a % 2;
      for (int y = 0; y < 2; ++y) {
        const int flat = (a0i * 4 + a) * 2 + y;
        const double u1 = a0i == 0 ? quality[y] * usage[act1] : 0.0;
        const double u2 = a0i == 0 ? quality[y] * usage[act2] : 0.0;
        payoffs[0][flat] = 0.5 * (u1 + u2);
        payoffs[1][flat] = u1;
        payoffs[2][flat] = u2;
      }
    }
  }
  return FiniteInterventionGame({acts, acts}, a0, sig, std::move(dist),
                                std::move(payoffs), "pass");
}

}  // namespace ivg
