#include <doctest.h>

#include <random>

#include "blb/linalg.hpp"
#include "datasets.hpp"

using namespace blb;
namespace td = blb::testdata;

TEST_CASE("svd reconstructs the matrix") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 5);
    const int cols = 1 + static_cast<int>(rng() % 5);
    LinearMap m(td::random_matrix(rows, cols, rng));
    const Svd& dec = m.svd();
    const Eigen::MatrixXd rebuilt = dec.u * dec.sigma.asDiagonal() * dec.v.transpose();
    const double scale = std::max(1.0, m.operator_norm());
    CHECK((rebuilt - m.matrix()).norm() <= 1e-10 * scale);
    for (int i = 0; i + 1 < dec.sigma.size(); ++i) {
      CHECK(dec.sigma(i) >= dec.sigma(i + 1));
    }
  }
}

TEST_CASE("essential rank counts strictly dominant singular values") {
  LinearMap id(Eigen::MatrixXd::Identity(3, 3));
  CHECK(essential_rank(id, 0.5) == 3);
  CHECK(essential_rank(id, 1.0) == 0);  // sigma = alpha is not counted
  CHECK(essential_rank(id, 0.0) == 3);

  LinearMap diag(Eigen::MatrixXd(Eigen::Vector3d(3.0, 1.0, 0.1).asDiagonal()));
  CHECK(essential_rank(diag, 0.5) == 2);
  CHECK(essential_rank(diag, 2.0) == 1);
  CHECK(essential_rank(diag, 5.0) == 0);
}

TEST_CASE("essential rank is monotone in alpha and in the subspace") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 4);
    LinearMap m(td::random_matrix(1 + static_cast<int>(rng() % 4), d, rng));
    const Subspace w2 = td::random_subspace(d, 2, rng);
    const Subspace w1 = Subspace::span(Eigen::VectorXd(w2.frame().col(0)));
    for (double alpha : {0.0, 0.1, 0.5, 1.0, 2.0}) {
      CHECK(essential_rank(m, w1, alpha) <= essential_rank(m, w2, alpha));
      CHECK(essential_rank(m, w2, alpha + 0.3) <= essential_rank(m, w2, alpha));
    }
  }
}

TEST_CASE("restricted rank matches the full rank on the full space") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    LinearMap m(td::random_matrix(2, d, rng));
    for (double alpha : {0.0, 0.3, 1.0}) {
      CHECK(essential_rank(m, Subspace::full(d), alpha) == essential_rank(m, alpha));
    }
  }
}

TEST_CASE("minimal covering subspace has the essential-rank dimension") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 3;
    LinearMap m(td::random_matrix(2, d, rng));
    const Subspace w = td::random_subspace(d, 2, rng);
    for (double alpha : {0.0, 0.2, 0.8}) {
      const Subspace e = minimal_covering_subspace(m, w, alpha);
      CHECK(e.dim() == essential_rank(m, w, alpha));
      CHECK(e.ambient_dim() == m.rows());
    }
  }
}

TEST_CASE("principal angles") {
  const Subspace x = Subspace::span(Eigen::VectorXd(Eigen::Vector2d(1, 0)));
  const Subspace y = Subspace::span(Eigen::VectorXd(Eigen::Vector2d(0, 1)));
  CHECK(principal_angle_distance(x, x) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(principal_angle_distance(x, y) ==
        doctest::Approx(std::acos(0.0)).epsilon(1e-9));
  const Subspace plane = Subspace::full(2);
  CHECK(std::isinf(principal_angle_distance(x, plane)));
}

TEST_CASE("subspace algebra") {
  const int d = 4;
  std::mt19937_64 rng(15);
  const Subspace w = td::random_subspace(d, 2, rng);
  CHECK(w.complement().dim() == 2);
  // complement is orthogonal
  CHECK((w.frame().transpose() * w.complement().frame()).norm() <= 1e-9);
  // projection is idempotent and fixes the subspace
  const Eigen::VectorXd v = w.frame().col(0);
  CHECK((w.project(v) - v).norm() <= 1e-10);
  CHECK(w.contains(v));
  CHECK(!w.contains(w.complement().frame().col(0)));

  const Subspace s = subspace_sum(w, w.complement());
  CHECK(s.dim() == d);
  CHECK(intersect(w, w.complement()).dim() == 0);
  CHECK(intersect(w, Subspace::full(d)).dim() == 2);
}

TEST_CASE("orthogonal projector recognition") {
  CHECK(LinearMap(Eigen::MatrixXd::Identity(3, 3)).is_orthogonal_projector());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2, 2);
  p(0, 0) = 1.0;
  CHECK(LinearMap(p).is_orthogonal_projector());
  CHECK(!LinearMap(2.0 * p).is_orthogonal_projector());
  CHECK(!LinearMap(td::mat(2, 2, {1, 1, 0, 1})).is_orthogonal_projector());
  std::mt19937_64 rng(16);
  const Subspace w = td::random_subspace(5, 3, rng);
  CHECK(orthogonal_projector(w).is_orthogonal_projector());
  CHECK(orthogonal_projector(w).rank() == 3);
}

TEST_CASE("spd matrix invariants") {
  CHECK_THROWS_AS(SpdMatrix(td::mat(2, 2, {1, 2, 0, 1})), InvalidInput);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const SpdMatrix q = td::random_spd(4, rng);
    CHECK(q.min_eigenvalue() > 0.0);
    CHECK(q.log_det() ==
          doctest::Approx(std::log(q.matrix().determinant())).epsilon(1e-8));
  }
}

TEST_CASE("determinant bound against diagonal products") {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 5);
    const SpdMatrix q = td::random_spd(d, rng);
    std::vector<Eigen::VectorXd> basis;
    Eigen::MatrixXd b = td::random_matrix(d, d, rng);
    if (std::abs(b.determinant()) < 1e-6) continue;
    for (int i = 0; i < d; ++i) basis.push_back(b.col(i));
    auto [lhs, rhs] = det_bound_check(q, basis);
    CHECK(lhs <= rhs * (1.0 + 1e-9));
  }
  // degenerate basis is rejected
  const SpdMatrix q = td::random_spd(2, rng);
  std::vector<Eigen::VectorXd> degenerate{Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 0)};
  CHECK_THROWS_AS(det_bound_check(q, degenerate), InvalidInput);
}
