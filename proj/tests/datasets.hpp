#pragma once

#include <random>

#include "blb/datum.hpp"

namespace blb::testdata {

inline Eigen::MatrixXd mat(int rows, int cols, std::initializer_list<double> entries) {
  Eigen::MatrixXd m(rows, cols);
  int k = 0;
  for (double e : entries) m(k / cols, k % cols) = e, ++k;
  return m;
}

/// Three rank-one maps on R^2: the two coordinate forms and (1, -1).
inline Datum young(double q = 2.0 / 3.0) {
  std::vector<LinearMap> maps;
  maps.emplace_back(mat(1, 2, {1, 0}));
  maps.emplace_back(mat(1, 2, {0, 1}));
  maps.emplace_back(mat(1, 2, {1, -1}));
  return Datum(2, std::move(maps), {q, q, q});
}

/// Coordinate-plane projections R^3 -> R^2 at weight 1/2, lambda scaling the
/// second coordinate of the third map (lambda = 1 is Loomis-Whitney).
inline Datum d_lambda(double lambda) {
  std::vector<LinearMap> maps;
  maps.emplace_back(mat(2, 3, {0, 1, 0, 0, 0, 1}));
  maps.emplace_back(mat(2, 3, {1, 0, 0, 0, 0, 1}));
  maps.emplace_back(mat(2, 3, {1, 0, 0, 0, lambda, 0}));
  return Datum(3, std::move(maps), {0.5, 0.5, 0.5});
}

inline Datum loomis_whitney() { return d_lambda(1.0); }

/// First two Loomis-Whitney maps at weight 1/2; rank-deficient in the
/// algebraic sense (the x2 axis is seen by only one map).
inline Datum lw_two_maps() {
  std::vector<LinearMap> maps;
  maps.emplace_back(mat(2, 3, {0, 1, 0, 0, 0, 1}));
  maps.emplace_back(mat(2, 3, {1, 0, 0, 0, 0, 1}));
  return Datum(3, std::move(maps), {0.5, 0.5});
}

/// Axis-line projectors in R^2 at weight (1, 1); the classical box example.
inline Datum two_line_projectors() {
  std::vector<LinearMap> maps;
  maps.emplace_back(mat(2, 2, {1, 0, 0, 0}));
  maps.emplace_back(mat(2, 2, {0, 0, 0, 1}));
  return Datum(2, std::move(maps), {1.0, 1.0});
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = gauss(rng);
  }
  return m;
}

inline SpdMatrix random_spd(int dim, std::mt19937_64& rng, double ridge = 0.1) {
  Eigen::MatrixXd g = random_matrix(dim, dim, rng);
  return SpdMatrix(Eigen::MatrixXd(g * g.transpose() / dim +
                                   ridge * Eigen::MatrixXd::Identity(dim, dim)));
}

inline Subspace random_subspace(int ambient, int dim, std::mt19937_64& rng) {
  return Subspace::span(random_matrix(ambient, dim, rng));
}

/// Random rotation of R^d (QR sign-fixed).
inline Eigen::MatrixXd random_rotation(int dim, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(dim, dim, rng));
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  Eigen::VectorXd diag = qr.matrixQR().diagonal();
  for (int i = 0; i < dim; ++i) {
    if (diag(i) < 0) q.col(i) = -q.col(i);
  }
  return q;
}

}  // namespace blb::testdata
