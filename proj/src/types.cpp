#include "ivg/types.hpp"

#include <cmath>

namespace ivg {

Vec normalized_distribution(const Vec& v, double tol, const std::string& what) {
  if (v.size() == 0) {
    throw ValidationError(what + ": empty probability vector");
  }
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k]) || v[k] < -tol) {
      throw ValidationError(what + ": negative or non-finite entry at index " +
                            std::to_string(k));
    }
  }
  const double sum = v.sum();
  if (std::abs(sum - 1.0) > tol) {
    throw ValidationError(what + ": entries sum to " + std::to_string(sum) +
                          ", expected 1");
  }
  Vec out = v.cwiseMax(0.0);
  return out / out.sum();
}

MixedProfile::MixedProfile(std::vector<Vec> dists) : per_user(std::move(dists)) {
  for (std::size_t i = 0; i < per_user.size(); ++i) {
    per_user[i] = normalized_distribution(per_user[i], 1e-12,
                                          "mixed action of user " +
                                              std::to_string(i + 1));
  }
}

MixedProfile MixedProfile::pure(const std::vector<int>& action_counts,
                                const std::vector<int>& actions) {
  if (action_counts.size() != actions.size()) {
    throw ValidationError("pure profile: size mismatch");
  }
  MixedProfile p;
  p.per_user.reserve(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] < 0 || actions[i] >= action_counts[i]) {
      throw ValidationError("pure profile: action index out of range for user " +
                            std::to_string(i + 1));
    }
    Vec v = Vec::Zero(action_counts[i]);
    v[actions[i]] = 1.0;
    p.per_user.push_back(std::move(v));
  }
  return p;
}

bool MixedProfile::is_pure(double tol) const {
  for (const Vec& v : per_user) {
    if (v.maxCoeff() < 1.0 - tol) return false;
  }
  return true;
}

std::vector<int> MixedProfile::argmax_actions() const {
  std::vector<int> a(per_user.size());
  for (std::size_t i = 0; i < per_user.size(); ++i) {
    Eigen::Index k;
    per_user[i].maxCoeff(&k);
    a[i] = static_cast<int>(k);
  }
  return a;
}

double MixedProfile::linf_distance(const MixedProfile& other) const {
  if (per_user.size() != other.per_user.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double d = 0.0;
  for (std::size_t i = 0; i < per_user.size(); ++i) {
    if (per_user[i].size() != other.per_user[i].size()) {
      return std::numeric_limits<double>::infinity();
    }
    d = std::max(d, (per_user[i] - other.per_user[i]).cwiseAbs().maxCoeff());
  }
  return d;
}

bool next_multi_index(std::vector<int>& idx, const std::vector<int>& radix) {
  for (int pos = static_cast<int>(idx.size()) - 1; pos >= 0; --pos) {
    if (++idx[pos] < radix[pos]) return true;
    idx[pos] = 0;
  }
  return false;
}

namespace {

void simplex_grid_rec(int dim, int remaining, int denom, Vec& point, int coord,
                      std::vector<Vec>& out) {
  if (coord == dim - 1) {
    point[coord] = static_cast<double>(remaining) / denom;
    out.push_back(point);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    point[coord] = static_cast<double>(k) / denom;
    simplex_grid_rec(dim, remaining - k, denom, point, coord + 1, out);
  }
}

}  // namespace

std::vector<Vec> simplex_grid(int dim, double step) {
  if (dim < 1) throw ValidationError("simplex_grid: dim must be >= 1");
  if (!(step > 0.0 && step <= 1.0)) {
    throw ValidationError("simplex_grid: step must be in (0, 1]");
  }
  const int denom = static_cast<int>(std::ceil(1.0 / step - 1e-12));
  std::vector<Vec> out;
  Vec point = Vec::Zero(dim);
  simplex_grid_rec(dim, denom, denom, point, 0, out);
  return out;
}

}  // namespace ivg
