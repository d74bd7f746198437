#pragma once

#include "ivg/finite_game.hpp"

#include <string>
#include <vector>

namespace ivg {

/// Two-user resource-sharing game with a gatekeeper intervention device:
/// two usage levels per user, two quality signals, and signal probabilities
/// p, q, r depending on how many users choose the high level.
struct ImperfectParams {
  double a_low = 1.0;
  double a_high = 1.19;
  double y_high = 5.0;
  double y_low = 1.0;
  double p = 0.96;
  double q = 0.80;
  double r = 0.65;

  /// Validates orderings and the prisoner's-dilemma conditions on the
  /// no-intervention game; ValidationError names the failed inequality.
  void validate() const;

  double y_of(double k) const { return k * y_high + (1.0 - k) * y_low; }

  // Signal-sensitivity building blocks.
  double x_term() const { return p * a_low - q * a_high; }   // p a_L - q a_H
  double z_term() const { return q * a_low - r * a_high; }   // q a_L - r a_H
  double slope_sign_term() const {
    return (p - q) * (1.0 - r) - (q - r) * (1.0 - q);
  }
  double sensitivity(double alpha) const {
    return alpha * x_term() + (1.0 - alpha) * z_term();
  }

  double v_tilde() const { return y_of(r) * a_high; }
  double v_bar() const { return y_of(p) * a_low; }
};

/// Best manager payoff sustaining the symmetric mixed profile where each user
/// plays the low level with probability alpha.
double w0(const ImperfectParams& params, double alpha);

/// The rule attaining w0(alpha): no intervention at alpha = 0; otherwise
/// certain pass-through on the high signal and a computed pass probability on
/// the low signal when signals are sensitive enough, full intervention when
/// they are not. Rule rows are ordered (high signal, low signal) and columns
/// (no-intervene, intervene).
FiniteInterventionRule attaining_rule(const ImperfectParams& params,
                                      double alpha);

/// Interior stationary point of the sensitivity condition; defined only when
/// the two sensitivity terms differ.
double alpha_bar(const ImperfectParams& params);

enum class FormulaTag { kVTilde, kMaxTildeW1, kMaxTildeWAlphaBar };

struct CaseLabel {
  char label;         // 'a'..'f'
  FormulaTag formula;  // which closed form applies
  // Which term of the max is attained (for reporting the figure captions).
  FormulaTag attained;
  // Set when the parameters sit on the case boundary x == z with a
  // non-positive slope term, resolved by the monotonicity argument.
  bool boundary = false;
};

/// Classification of the parameter regime and the resulting best performance
/// with intervention.
std::pair<CaseLabel, double> classify(const ImperfectParams& params);

/// Closed-form gap v_bar - v_star in the regimes where v_star = w0(1).
double gap_closed_form(const ImperfectParams& params);

struct Fig4Row {
  double alpha;
  double w0_value;
  double v_bar;
};

/// Samples w0 on {0, step, 2*step, ..., 1} with the constant v_bar column.
std::vector<Fig4Row> fig4_data(const ImperfectParams& params, double alpha_step);

/// Writes fig4 rows as CSV with header "alpha,w0,v_bar".
std::string fig4_csv(const std::vector<Fig4Row>& rows);

/// The finite intervention game of this example: signals (high, low),
/// intervention actions (no-intervene, intervene), manager payoff the average
/// of the user payoffs.
FiniteInterventionGame make_imperfect_game(const ImperfectParams& params);

}  // namespace ivg
