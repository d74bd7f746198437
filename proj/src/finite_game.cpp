#include "ivg/finite_game.hpp"

#include <algorithm>
#include <unordered_set>

namespace ivg {

namespace {

void check_unique(const std::vector<std::string>& labels,
                  const std::string& what) {
  if (labels.empty()) throw ValidationError(what + ": empty label list");
  std::unordered_set<std::string> seen;
  for (const std::string& l : labels) {
    if (!seen.insert(l).second) {
      throw ValidationError(what + ": duplicate label '" + l + "'");
    }
  }
}

int find_label(const std::vector<std::string>& labels, const std::string& label,
               const std::string& what) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw ValidationError(what + ": unknown label '" + label + "'");
  }
  return static_cast<int>(it - labels.begin());
}

}  // namespace

FiniteInterventionGame::FiniteInterventionGame(
    std::vector<std::vector<std::string>> user_actions,
    std::vector<std::string> intervention_actions,
    std::vector<std::string> signals, Mat signal_dist, std::vector<Vec> payoffs,
    std::optional<std::string> no_intervention_action)
    : user_actions_(std::move(user_actions)),
      intervention_actions_(std::move(intervention_actions)),
      signals_(std::move(signals)),
      signal_dist_(std::move(signal_dist)),
      payoffs_(std::move(payoffs)) {
  if (user_actions_.empty()) {
    throw ValidationError("game: at least one user required");
  }
  for (std::size_t i = 0; i < user_actions_.size(); ++i) {
    check_unique(user_actions_[i], "actions of user " + std::to_string(i + 1));
  }
  check_unique(intervention_actions_, "intervention actions");
  check_unique(signals_, "signals");

  num_signals_ = static_cast<int>(signals_.size());
  num_profiles_ = 1;
  for (const auto& acts : user_actions_) {
    num_profiles_ *= static_cast<int>(acts.size());
  }

  if (signal_dist_.rows() != num_profiles_ ||
      signal_dist_.cols() != num_signals_) {
    throw ValidationError("game: signal_dist must be num_profiles x num_signals");
  }
  for (int a = 0; a < num_profiles_; ++a) {
    signal_dist_.row(a) =
        normalized_distribution(signal_dist_.row(a).transpose(), 1e-12,
                                "signal distribution of profile " +
                                    std::to_string(a))
            .transpose();
  }

  if (static_cast<int>(payoffs_.size()) != num_users() + 1) {
    throw ValidationError("game: payoffs must cover participants 0..N");
  }
  const Eigen::Index expected =
      static_cast<Eigen::Index>(intervention_actions_.size()) * num_profiles_ *
      num_signals_;
  for (std::size_t who = 0; who < payoffs_.size(); ++who) {
    if (payoffs_[who].size() != expected || !payoffs_[who].allFinite()) {
      throw ValidationError("game: payoff tensor of participant " +
                            std::to_string(who) +
                            " is not total over (a0, a, y) or not finite");
    }
  }

  if (no_intervention_action) {
    no_intervention_ = find_label(intervention_actions_, *no_intervention_action,
                                  "no_intervention_action");
  }
}

std::vector<int> FiniteInterventionGame::action_counts() const {
  std::vector<int> counts(num_users());
  for (int i = 0; i < num_users(); ++i) counts[i] = num_actions(i);
  return counts;
}

int FiniteInterventionGame::flat(const std::vector<int>& profile) const {
  if (static_cast<int>(profile.size()) != num_users()) {
    throw ValidationError("profile: wrong number of users");
  }
  int f = 0;
  for (int i = 0; i < num_users(); ++i) {
    if (profile[i] < 0 || profile[i] >= num_actions(i)) {
      throw ValidationError("profile: action index out of range for user " +
                            std::to_string(i + 1));
    }
    f = f * num_actions(i) + profile[i];
  }
  return f;
}

std::vector<int> FiniteInterventionGame::profile_from_flat(int flat) const {
  std::vector<int> p(num_users());
  for (int i = num_users() - 1; i >= 0; --i) {
    p[i] = flat % num_actions(i);
    flat /= num_actions(i);
  }
  return p;
}

int FiniteInterventionGame::action_index(int user,
                                         const std::string& label) const {
  return find_label(user_actions_[user], label,
                    "action of user " + std::to_string(user + 1));
}

int FiniteInterventionGame::intervention_index(const std::string& label) const {
  return find_label(intervention_actions_, label, "intervention action");
}

int FiniteInterventionGame::signal_index(const std::string& label) const {
  return find_label(signals_, label, "signal");
}

FiniteInterventionRule::FiniteInterventionRule(Mat per_signal)
    : per_signal_(std::move(per_signal)) {
  if (per_signal_.rows() < 1 || per_signal_.cols() < 1) {
    throw ValidationError("rule: empty matrix");
  }
  for (Eigen::Index y = 0; y < per_signal_.rows(); ++y) {
    per_signal_.row(y) =
        normalized_distribution(per_signal_.row(y).transpose(), 1e-12,
                                "rule at signal " + std::to_string(y))
            .transpose();
  }
}

FiniteInterventionRule FiniteInterventionRule::degenerate(int num_signals,
                                                          int num_a0, int a0) {
  Mat m = Mat::Zero(num_signals, num_a0);
  m.col(a0).setOnes();
  return FiniteInterventionRule(std::move(m));
}

double ex_ante_payoff(const FiniteInterventionGame& game,
                      const FiniteInterventionRule& rule,
                      const std::vector<int>& profile, int who) {
  if (who < 0 || who > game.num_users()) {
    throw ValidationError("ex_ante_payoff: participant index out of range");
  }
  if (rule.num_signals() != game.num_signals() ||
      rule.matrix().cols() != game.num_intervention_actions()) {
    throw ValidationError("ex_ante_payoff: rule shape does not match game");
  }
  const int a = game.flat(profile);
  double total = 0.0;
  for (int y = 0; y < game.num_signals(); ++y) {
    const double rho = game.signal_prob(a, y);
    if (rho == 0.0) continue;
    for (int a0 = 0; a0 < game.num_intervention_actions(); ++a0) {
      total += game.payoff(who, a0, a, y) * rule.prob(y, a0) * rho;
    }
  }
  return total;
}

double ex_ante_payoff(const FiniteInterventionGame& game,
                      const FiniteInterventionRule& rule,
                      const std::vector<std::string>& profile, int who) {
  if (static_cast<int>(profile.size()) != game.num_users()) {
    throw ValidationError("profile: wrong number of users");
  }
  std::vector<int> idx(profile.size());
  for (int i = 0; i < game.num_users(); ++i) {
    idx[i] = game.action_index(i, profile[i]);
  }
  return ex_ante_payoff(game, rule, idx, who);
}

double mixed_ex_ante_payoff(const FiniteInterventionGame& game,
                            const FiniteInterventionRule& rule,
                            const MixedProfile& profile, int who) {
  if (profile.num_users() != game.num_users()) {
    throw ValidationError("mixed profile: wrong number of users");
  }
  for (int i = 0; i < game.num_users(); ++i) {
    if (profile.per_user[i].size() != game.num_actions(i)) {
      throw ValidationError("mixed profile: wrong support size for user " +
                            std::to_string(i + 1));
    }
  }
  const std::vector<int> counts = game.action_counts();
  std::vector<int> idx(game.num_users(), 0);
  double total = 0.0;
  do {
    double w = 1.0;
    for (int i = 0; i < game.num_users(); ++i) w *= profile.per_user[i][idx[i]];
    if (w != 0.0) total += w * ex_ante_payoff(game, rule, idx, who);
  } while (next_multi_index(idx, counts));
  return total;
}

InducedGame induced_game(const FiniteInterventionGame& game,
                         const FiniteInterventionRule& rule) {
  const std::vector<int> counts = game.action_counts();
  std::vector<Vec> user_tensors(game.num_users(), Vec::Zero(game.num_profiles()));
  Vec manager = Vec::Zero(game.num_profiles());
  std::vector<int> idx(game.num_users(), 0);
  do {
    const int a = game.flat(idx);
    manager[a] = ex_ante_payoff(game, rule, idx, 0);
    for (int i = 0; i < game.num_users(); ++i) {
      user_tensors[i][a] = ex_ante_payoff(game, rule, idx, i + 1);
    }
  } while (next_multi_index(idx, counts));
  return InducedGame{NormalFormGame(counts, std::move(user_tensors)),
                     std::move(manager)};
}

bool sustains(const FiniteInterventionGame& game,
              const FiniteInterventionRule& rule, const MixedProfile& profile,
              double tolerance) {
  if (tolerance < 0.0) throw ValidationError("sustains: tolerance must be >= 0");
  const InducedGame induced = induced_game(game, rule);
  return verify_nash(induced.users, profile, tolerance);
}

}  // namespace ivg
