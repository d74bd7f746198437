#include "ivg/nash.hpp"

#include <algorithm>
#include <cmath>

namespace ivg {

NormalFormGame::NormalFormGame(std::vector<int> action_counts,
                               std::vector<Vec> payoffs)
    : action_counts_(std::move(action_counts)), payoffs_(std::move(payoffs)) {
  if (action_counts_.empty()) {
    throw ValidationError("normal-form game: no players");
  }
  num_profiles_ = 1;
  for (int c : action_counts_) {
    if (c < 1) throw ValidationError("normal-form game: action count < 1");
    num_profiles_ *= c;
  }
  if (static_cast<int>(payoffs_.size()) != num_players()) {
    throw ValidationError("normal-form game: one payoff tensor per player required");
  }
  for (const Vec& t : payoffs_) {
    if (t.size() != num_profiles_) {
      throw ValidationError("normal-form game: payoff tensor shape mismatch");
    }
    if (!t.allFinite()) {
      throw ValidationError("normal-form game: non-finite payoff entry");
    }
  }
}

int NormalFormGame::flat(const std::vector<int>& profile) const {
  int f = 0;
  for (int i = 0; i < num_players(); ++i) {
    f = f * action_counts_[i] + profile[i];
  }
  return f;
}

std::vector<int> NormalFormGame::profile_from_flat(int flat) const {
  std::vector<int> p(num_players());
  for (int i = num_players() - 1; i >= 0; --i) {
    p[i] = flat % action_counts_[i];
    flat /= action_counts_[i];
  }
  return p;
}

double expected_value(const NormalFormGame& g, const Vec& tensor,
                      const MixedProfile& profile) {
  std::vector<int> idx(g.num_players(), 0);
  double total = 0.0;
  do {
    double w = 1.0;
    for (int i = 0; i < g.num_players(); ++i) w *= profile.per_user[i][idx[i]];
    if (w != 0.0) total += w * tensor[g.flat(idx)];
  } while (next_multi_index(idx, g.action_counts()));
  return total;
}

double expected_payoff(const NormalFormGame& g, const MixedProfile& profile,
                       int player) {
  return expected_value(g, g.payoff_tensor(player), profile);
}

bool verify_nash(const NormalFormGame& g, const MixedProfile& profile,
                 double tolerance) {
  for (int i = 0; i < g.num_players(); ++i) {
    const double eq_value = expected_payoff(g, profile, i);
    for (int ai = 0; ai < g.actions(i); ++ai) {
      MixedProfile dev = profile;
      dev.per_user[i] = Vec::Zero(g.actions(i));
      dev.per_user[i][ai] = 1.0;
      if (expected_payoff(g, dev, i) > eq_value + tolerance) return false;
    }
  }
  return true;
}

EquilibriumSet pure_nash(const NormalFormGame& g, double tolerance) {
  EquilibriumSet result;
  result.tolerance = tolerance;
  std::vector<int> idx(g.num_players(), 0);
  do {
    bool stable = true;
    for (int i = 0; i < g.num_players() && stable; ++i) {
      const double own = g.payoff(i, g.flat(idx));
      std::vector<int> dev = idx;
      for (int ai = 0; ai < g.actions(i); ++ai) {
        dev[i] = ai;
        if (g.payoff(i, g.flat(dev)) > own + tolerance) {
          stable = false;
          break;
        }
      }
    }
    if (stable) {
      result.profiles.push_back(MixedProfile::pure(g.action_counts(), idx));
      result.is_pure.push_back(true);
    }
  } while (next_multi_index(idx, g.action_counts()));
  return result;
}

namespace {

// Enumerate the size-k subsets of {0,...,n-1} in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (int j = pos + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Solves the indifference system for the opponent's mixture on `opp_support`
// that makes `own_support` payoff-equal. Returns false when singular.
bool solve_indifference(const Mat& own_payoff, const std::vector<int>& own_support,
                        const std::vector<int>& opp_support, Vec* mixture) {
  const int k = static_cast<int>(own_support.size());
  Mat system = Mat::Zero(k + 1, k + 1);
  Vec rhs = Vec::Zero(k + 1);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      system(r, c) = own_payoff(own_support[r], opp_support[c]);
    }
    system(r, k) = -1.0;  // common value v
  }
  for (int c = 0; c < k; ++c) system(k, c) = 1.0;
  rhs[k] = 1.0;
  Eigen::FullPivLU<Mat> lu(system);
  if (!lu.isInvertible()) return false;
  Vec sol = lu.solve(rhs);
  *mixture = sol.head(k);
  return true;
}

}  // namespace

EquilibriumSet mixed_nash_2p(const NormalFormGame& g, double tolerance) {
  if (g.num_players() != 2) {
    throw ValidationError("mixed_nash_2p: requires exactly 2 players");
  }
  const int m = g.actions(0), n = g.actions(1);
  Mat payoff1(m, n), payoff2(m, n);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < n; ++b) {
      const int f = g.flat({a, b});
      payoff1(a, b) = g.payoff(0, f);
      payoff2(a, b) = g.payoff(1, f);
    }
  }

  EquilibriumSet result;
  result.tolerance = tolerance;
  const double support_tol = 1e-9;

  for (int k = 1; k <= std::min(m, n); ++k) {
    for (const auto& s1 : subsets_of_size(m, k)) {
      for (const auto& s2 : subsets_of_size(n, k)) {
        Vec mix2, mix1;
        if (!solve_indifference(payoff1, s1, s2, &mix2) ||
            !solve_indifference(payoff2.transpose(), s2, s1, &mix1)) {
          if (k >= 2) result.degenerate_supports_skipped = true;
          continue;
        }
        if (mix1.minCoeff() < -support_tol || mix2.minCoeff() < -support_tol) {
          continue;
        }
        Vec d1 = Vec::Zero(m), d2 = Vec::Zero(n);
        for (int j = 0; j < k; ++j) {
          d1[s1[j]] = std::max(mix1[j], 0.0);
          d2[s2[j]] = std::max(mix2[j], 0.0);
        }
        d1 /= d1.sum();
        d2 /= d2.sum();
        MixedProfile candidate{{d1, d2}};
        if (!verify_nash(g, candidate, tolerance)) continue;
        bool duplicate = false;
        for (const MixedProfile& seen : result.profiles) {
          if (candidate.linf_distance(seen) < 1e-7) {
            duplicate = true;
            break;
          }
        }
        if (duplicate) continue;
        result.profiles.push_back(std::move(candidate));
        result.is_pure.push_back(k == 1);
      }
    }
  }
  return result;
}

}  // namespace ivg
