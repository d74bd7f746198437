#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace ivg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Raised when user-supplied data (JSON games, parameters, labels) is invalid.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails (solver bug, not bad input).
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Checks that `v` is a probability vector (nonnegative, sums to 1 within
/// `tol`) and returns it renormalized to sum exactly to 1.
Vec normalized_distribution(const Vec& v, double tol = 1e-12,
                            const std::string& what = "distribution");

/// One probability vector per user, vector i over user i's pure actions.
struct MixedProfile {
  std::vector<Vec> per_user;

  MixedProfile() = default;
  explicit MixedProfile(std::vector<Vec> dists);

  int num_users() const { return static_cast<int>(per_user.size()); }

  /// Degenerate profile putting mass 1 on the given pure actions.
  static MixedProfile pure(const std::vector<int>& action_counts,
                           const std::vector<int>& actions);

  /// True if every user's vector puts mass >= 1 - tol on a single action.
  bool is_pure(double tol = 1e-9) const;

  /// Pure actions of a (near-)degenerate profile: argmax per user.
  std::vector<int> argmax_actions() const;

  double linf_distance(const MixedProfile& other) const;
};

/// Odometer increment over mixed radices; returns false after wrapping to
/// all zeros (i.e. when the enumeration is exhausted).
bool next_multi_index(std::vector<int>& idx, const std::vector<int>& radix);

/// All distributions over `dim` atoms whose entries are multiples of
/// 1/ceil(1/step), in lexicographic order. step in (0, 1].
std::vector<Vec> simplex_grid(int dim, double step);

}  // namespace ivg
