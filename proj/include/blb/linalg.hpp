#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "blb/errors.hpp"

namespace blb {

// Numerical policy shared by all modules.
namespace tol {
inline constexpr double orth = 1e-10;        // orthonormality of frames
inline constexpr double svd_rel = 1e-12;     // relative SVD reconstruction
inline constexpr double crit_per_dim = 1e-9; // criticality defect, per ambient dim
inline constexpr double feas = 1e-8;         // feasibility threshold in subspace searches
inline constexpr double loewner = 1e-8;      // Loewner-order slack A <= R
}  // namespace tol

/// Default strictness gap for "singular value strictly greater than alpha".
/// Counting sigma > alpha + gap errs on the lower-semicontinuous side.
inline double rank_gap(double sigma_top) {
  return 1e-10 * std::max(1.0, sigma_top);
}

struct Svd {
  Eigen::MatrixXd u;      // rows x r, orthonormal columns
  Eigen::VectorXd sigma;  // r, non-increasing, non-negative
  Eigen::MatrixXd v;      // cols x r, orthonormal columns
};

/// Dense real linear map H -> H' with its singular value decomposition
/// computed once at construction. Immutable.
class LinearMap {
public:
  explicit LinearMap(Eigen::MatrixXd entries);

  int rows() const { return static_cast<int>(mat_.rows()); }
  int cols() const { return static_cast<int>(mat_.cols()); }
  const Eigen::MatrixXd& matrix() const { return mat_; }
  const Svd& svd() const { return svd_; }

  double operator_norm() const {
    return svd_.sigma.size() > 0 ? svd_.sigma(0) : 0.0;
  }
  /// Rank at the default numerical threshold.
  int rank() const;
  /// True if the matrix is a square orthogonal projector (symmetric, idempotent).
  bool is_orthogonal_projector(double tau = 1e-8) const;

private:
  Eigen::MatrixXd mat_;
  Svd svd_;
};

/// Element of the Grassmannian of R^d, stored as a d x k orthonormal frame.
/// k = 0 (the zero subspace) is allowed.
class Subspace {
public:
  static Subspace zero(int ambient_dim);
  static Subspace full(int ambient_dim);
  /// Orthonormal frame given directly; validated.
  static Subspace from_frame(Eigen::MatrixXd frame);
  /// Span of arbitrary (possibly dependent) column vectors; rank-truncating QR.
  static Subspace span(const Eigen::MatrixXd& vectors);
  static Subspace span(const Eigen::VectorXd& v);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(frame_.cols()); }
  const Eigen::MatrixXd& frame() const { return frame_; }

  Subspace complement() const;
  /// Orthogonal projection of a vector onto this subspace.
  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
  /// Contains x up to tolerance (distance of x to the subspace <= tau * |x|).
  bool contains(const Eigen::VectorXd& x, double tau = 1e-8) const;

private:
  Subspace(int ambient, Eigen::MatrixXd frame)
      : ambient_(ambient), frame_(std::move(frame)) {}
  int ambient_ = 0;
  Eigen::MatrixXd frame_;
};

/// Symmetric positive (semi-)definite matrix.
class SpdMatrix {
public:
  explicit SpdMatrix(Eigen::MatrixXd entries, bool allow_semidefinite = false);
  static SpdMatrix identity(int dim, double scale = 1.0);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& matrix() const { return mat_; }
  bool semidefinite_tagged() const { return semidefinite_; }

  double min_eigenvalue() const;
  double max_eigenvalue() const;
  double log_det() const;

private:
  Eigen::MatrixXd mat_;
  bool semidefinite_ = false;
};

/// U, sigma (non-increasing), V with map = U diag(sigma) V^T.
Svd svd(const LinearMap& map);

/// Number of singular values strictly greater than alpha (Definition of
/// essential rank); strictness resolved by rank_gap, caller-overridable.
int essential_rank(const LinearMap& map, double alpha, double tau_rank = -1.0);

/// Essential rank of the restriction map|_W.
int essential_rank(const LinearMap& map, const Subspace& w, double alpha,
                   double tau_rank = -1.0);

/// Smallest subspace E of the codomain with map(B_1^W) contained in
/// B_alpha + E; spanned by the images of the top right singular vectors
/// of the restriction.
Subspace minimal_covering_subspace(const LinearMap& map, const Subspace& w,
                                   double alpha, double tau_rank = -1.0);

/// Principal angles between two subspaces of equal dimension, ascending.
std::vector<double> principal_angles(const Subspace& v, const Subspace& w);

/// l2 norm of the principal-angle vector; +infinity when dimensions differ.
double principal_angle_distance(const Subspace& v, const Subspace& w);

/// (det Q, |e_1 ^ ... ^ e_d|^-2 * prod <Q e_k, e_k>); the first is at most the
/// second for any positive semi-definite Q and any basis.
std::pair<double, double> det_bound_check(const SpdMatrix& q,
                                          const std::vector<Eigen::VectorXd>& basis);

/// The d x d orthogonal projector frame * frame^T.
LinearMap orthogonal_projector(const Subspace& w);

/// Intersection and sum of subspaces (numerical, tolerance on cos of angles).
Subspace intersect(const Subspace& a, const Subspace& b, double tau = 1e-8);
Subspace subspace_sum(const Subspace& a, const Subspace& b);

}  // namespace blb
