#include "blb/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace blb {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidInput(std::string(what) + ": non-finite entries");
  }
}

}  // namespace

LinearMap::LinearMap(Eigen::MatrixXd entries) : mat_(std::move(entries)) {
  if (mat_.rows() < 0 || mat_.cols() < 1) {
    throw InvalidInput("LinearMap: empty source space");
  }
  require_finite(mat_, "LinearMap");
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(mat_, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd_.u = dec.matrixU();
  svd_.sigma = dec.singularValues();
  svd_.v = dec.matrixV();
}

int LinearMap::rank() const {
  if (svd_.sigma.size() == 0) return 0;
  const double thr = rank_gap(svd_.sigma(0));
  int r = 0;
  for (Eigen::Index i = 0; i < svd_.sigma.size(); ++i) {
    if (svd_.sigma(i) > thr) ++r;
  }
  return r;
}

bool LinearMap::is_orthogonal_projector(double tau) const {
  if (rows() != cols()) return false;
  if ((mat_ - mat_.transpose()).cwiseAbs().maxCoeff() > tau) return false;
  return (mat_ * mat_ - mat_).cwiseAbs().maxCoeff() <= tau;
}

Subspace Subspace::zero(int ambient_dim) {
  if (ambient_dim < 1) throw InvalidInput("Subspace: ambient_dim must be positive");
  return Subspace(ambient_dim, Eigen::MatrixXd(ambient_dim, 0));
}

Subspace Subspace::full(int ambient_dim) {
  if (ambient_dim < 1) throw InvalidInput("Subspace: ambient_dim must be positive");
  return Subspace(ambient_dim, Eigen::MatrixXd::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::from_frame(Eigen::MatrixXd frame) {
  const int d = static_cast<int>(frame.rows());
  const int k = static_cast<int>(frame.cols());
  if (d < 1 || k > d) throw InvalidInput("Subspace: bad frame shape");
  require_finite(frame, "Subspace");
  if (k > 0) {
    Eigen::MatrixXd g = frame.transpose() * frame;
    if ((g - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() > tol::orth) {
      throw InvalidInput("Subspace: frame columns are not orthonormal");
    }
  }
  return Subspace(d, std::move(frame));
}

Subspace Subspace::span(const Eigen::MatrixXd& vectors) {
  const int d = static_cast<int>(vectors.rows());
  if (d < 1) throw InvalidInput("Subspace: bad ambient dimension");
  require_finite(vectors, "Subspace");
  if (vectors.cols() == 0) return zero(d);
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(vectors, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = dec.singularValues();
  const double thr = (s.size() > 0 ? rank_gap(s(0)) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) ++r;
  }
  return Subspace(d, dec.matrixU().leftCols(r));
}

Subspace Subspace::span(const Eigen::VectorXd& v) {
  return span(Eigen::MatrixXd(v));
}

Subspace Subspace::complement() const {
  const int d = ambient_;
  const int k = dim();
  if (k == 0) return full(d);
  if (k == d) return zero(d);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(d, d) - frame_ * frame_.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(p, Eigen::ComputeThinU);
  return Subspace(d, dec.matrixU().leftCols(d - k));
}

Eigen::VectorXd Subspace::project(const Eigen::VectorXd& x) const {
  if (x.size() != ambient_) throw InvalidInput("Subspace::project: dimension mismatch");
  if (dim() == 0) return Eigen::VectorXd::Zero(ambient_);
  return frame_ * (frame_.transpose() * x);
}

bool Subspace::contains(const Eigen::VectorXd& x, double tau) const {
  const double nx = x.norm();
  if (nx == 0.0) return true;
  return (x - project(x)).norm() <= tau * nx;
}

SpdMatrix::SpdMatrix(Eigen::MatrixXd entries, bool allow_semidefinite)
    : mat_(std::move(entries)), semidefinite_(allow_semidefinite) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
    throw InvalidInput("SpdMatrix: must be square and non-empty");
  }
  require_finite(mat_, "SpdMatrix");
  const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
  if ((mat_ - mat_.transpose()).cwiseAbs().maxCoeff() > tol::orth * scale) {
    throw InvalidInput("SpdMatrix: not symmetric");
  }
  mat_ = 0.5 * (mat_ + mat_.transpose().eval());
  const double lo = min_eigenvalue();
  if (allow_semidefinite) {
    if (lo < -1e-10 * scale) throw InvalidInput("SpdMatrix: not positive semi-definite");
  } else if (lo <= 0.0) {
    throw InvalidInput("SpdMatrix: not strictly positive definite");
  }
}

SpdMatrix SpdMatrix::identity(int dim, double scale) {
  return SpdMatrix(scale * Eigen::MatrixXd::Identity(dim, dim));
}

double SpdMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double SpdMatrix::max_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double SpdMatrix::log_det() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat_, Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam <= 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(lam);
  }
  return acc;
}

Svd svd(const LinearMap& map) { return map.svd(); }

namespace {

int count_above(const Eigen::VectorXd& sigma, double alpha, double tau_rank) {
  if (sigma.size() == 0) return 0;
  const double gap = tau_rank >= 0.0 ? tau_rank : rank_gap(sigma(0));
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > alpha + gap) ++r;
  }
  return r;
}

}  // namespace

int essential_rank(const LinearMap& map, double alpha, double tau_rank) {
  if (alpha < 0.0) throw InvalidInput("essential_rank: alpha must be non-negative");
  return count_above(map.svd().sigma, alpha, tau_rank);
}

int essential_rank(const LinearMap& map, const Subspace& w, double alpha,
                   double tau_rank) {
  if (alpha < 0.0) throw InvalidInput("essential_rank: alpha must be non-negative");
  if (w.ambient_dim() != map.cols()) {
    throw InvalidInput("essential_rank: subspace ambient dim != map source dim");
  }
  if (w.dim() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(map.matrix() * w.frame());
  return count_above(dec.singularValues(), alpha, tau_rank);
}

Subspace minimal_covering_subspace(const LinearMap& map, const Subspace& w,
                                   double alpha, double tau_rank) {
  if (alpha < 0.0) throw InvalidInput("minimal_covering_subspace: alpha < 0");
  if (w.ambient_dim() != map.cols()) {
    throw InvalidInput("minimal_covering_subspace: dimension mismatch");
  }
  if (w.dim() == 0) return Subspace::zero(std::max(1, map.rows()));
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(map.matrix() * w.frame(), Eigen::ComputeThinU);
  const int r = count_above(dec.singularValues(), alpha, tau_rank);
  return Subspace::from_frame(dec.matrixU().leftCols(r));
}

std::vector<double> principal_angles(const Subspace& v, const Subspace& w) {
  if (v.ambient_dim() != w.ambient_dim()) {
    throw InvalidInput("principal_angles: ambient dimension mismatch");
  }
  if (v.dim() != w.dim()) {
    throw InvalidInput("principal_angles: subspace dimensions differ");
  }
  if (v.dim() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(v.frame().transpose() * w.frame());
  std::vector<double> angles;
  angles.reserve(static_cast<size_t>(dec.singularValues().size()));
  // singular values descending => angles ascending
  for (Eigen::Index i = dec.singularValues().size() - 1; i >= 0; --i) {
    const double c = std::clamp(dec.singularValues()(i), -1.0, 1.0);
    angles.insert(angles.begin(), std::acos(c));
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

double principal_angle_distance(const Subspace& v, const Subspace& w) {
  if (v.ambient_dim() != w.ambient_dim()) {
    throw InvalidInput("principal_angle_distance: ambient dimension mismatch");
  }
  if (v.dim() != w.dim()) return std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (double a : principal_angles(v, w)) acc += a * a;
  return std::sqrt(acc);
}

std::pair<double, double> det_bound_check(const SpdMatrix& q,
                                          const std::vector<Eigen::VectorXd>& basis) {
  const int d = q.dim();
  if (static_cast<int>(basis.size()) != d) {
    throw InvalidInput("det_bound_check: basis size must equal dim");
  }
  Eigen::MatrixXd b(d, d);
  for (int k = 0; k < d; ++k) {
    if (basis[k].size() != d) throw InvalidInput("det_bound_check: bad basis vector");
    b.col(k) = basis[k];
  }
  const double wedge = std::abs(b.determinant());
  double col_scale = 1.0;
  for (int k = 0; k < d; ++k) col_scale *= std::max(1e-300, b.col(k).norm());
  if (wedge <= 1e-12 * col_scale) {
    throw InvalidInput("det_bound_check: degenerate basis");
  }
  const double lhs = q.matrix().determinant();
  double prod = 1.0;
  for (int k = 0; k < d; ++k) {
    prod *= b.col(k).dot(q.matrix() * b.col(k));
  }
  return {lhs, prod / (wedge * wedge)};
}

LinearMap orthogonal_projector(const Subspace& w) {
  const int d = w.ambient_dim();
  if (w.dim() == 0) return LinearMap(Eigen::MatrixXd::Zero(d, d));
  return LinearMap(w.frame() * w.frame().transpose());
}

Subspace intersect(const Subspace& a, const Subspace& b, double tau) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw InvalidInput("intersect: ambient dimension mismatch");
  }
  const int d = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(d);
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(a.frame().transpose() * b.frame(),
                                        Eigen::ComputeThinU);
  int m = 0;
  for (Eigen::Index i = 0; i < dec.singularValues().size(); ++i) {
    if (dec.singularValues()(i) >= 1.0 - tau) ++m;
  }
  if (m == 0) return Subspace::zero(d);
  const Eigen::MatrixXd common = a.frame() * dec.matrixU().leftCols(m);
  return Subspace::span(common);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw InvalidInput("subspace_sum: ambient dimension mismatch");
  }
  Eigen::MatrixXd joined(a.ambient_dim(), a.dim() + b.dim());
  joined << a.frame(), b.frame();
  return Subspace::span(joined);
}

}  // namespace blb
