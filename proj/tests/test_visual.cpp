#include <doctest.h>

#include <cmath>
#include <set>

#include "blb/visual.hpp"
#include "datasets.hpp"

using namespace blb;
namespace td = blb::testdata;

namespace {

PointCloud grid2d(int n, double delta, double offset = 0.0) {
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      pts.push_back(Eigen::Vector2d(offset + i * delta, offset + j * delta));
    }
  }
  return PointCloud::make(2, std::move(pts));
}

}  // namespace

TEST_CASE("covering estimate basics") {
  PointCloud single = PointCloud::make(2, {Eigen::Vector2d(0.25, 0.25)});
  for (double delta : {0.1, 0.5}) {
    const auto est = covering_estimate(single, delta);
    CHECK(est.cell_count == 1);
    CHECK(est.separated_count == 1);
  }

  // two points at distance delta/2 collapse in the separated count
  const double delta = 0.2;
  PointCloud close_pair =
      PointCloud::make(2, {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(0.1, 0.0)});
  CHECK(covering_estimate(close_pair, delta).separated_count == 1);

  CHECK_THROWS_AS(covering_estimate(single, 0.0), InvalidInput);
  CHECK_THROWS_AS(covering_estimate(single, 1.0), InvalidInput);
  CHECK_THROWS_AS(covering_estimate(PointCloud::make(2, {}), 0.5), InvalidInput);
}

TEST_CASE("grid occupies exactly k^d cells") {
  const int k = 5;
  const double delta = 0.1;
  const auto est = covering_estimate(grid2d(k, delta), delta);
  CHECK(est.cell_count == k * k);
  CHECK(est.separated_count == k * k);  // spacing equals delta
}

TEST_CASE("point cloud validation") {
  CHECK_THROWS_AS(PointCloud::make(2, {Eigen::Vector2d(1.2, 0.0)}), InvalidInput);
  Eigen::VectorXd wrong(3);
  wrong << 0, 0, 0;
  CHECK_THROWS_AS(PointCloud::make(2, {wrong}), InvalidInput);
}

TEST_CASE("project_cloud") {
  const auto cloud = grid2d(4, 0.1);
  const auto same = project_cloud(cloud, Subspace::full(2));
  CHECK(same.points.size() == cloud.points.size());
  CHECK(same.ambient_dim == 2);

  const auto nothing = project_cloud(cloud, Subspace::zero(2));
  CHECK(nothing.ambient_dim == 0);

  // diagonal line: x + y collapses the grid onto ~2n - 1 distinct values
  const Subspace diag =
      Subspace::span(Eigen::VectorXd(Eigen::Vector2d(1, 1).normalized()));
  const auto line = project_cloud(cloud, diag);
  CHECK(line.ambient_dim == 1);
  std::set<long long> distinct;
  for (const auto& p : line.points) {
    distinct.insert(std::llround(p(0) * 1e6));
  }
  CHECK(distinct.size() == 7);

  CHECK_THROWS_AS(project_cloud(cloud, Subspace::full(3)), InvalidInput);
}

TEST_CASE("visual check on the classical box example") {
  const Datum boxes = td::two_line_projectors();
  const double alpha = 0.5;
  const auto verdict = check_perceptivity(boxes, {alpha, alpha}, 0.0);
  REQUIRE(verdict.status == VerdictStatus::Certified);

  const int n = 16;
  const double delta = 1.0 / n;
  const auto cloud = grid2d(11, delta);  // 11 * delta stays inside the ball
  const auto report =
      visual_check(boxes, cloud, delta, {alpha, alpha}, 0.0, verdict);
  // lhs = m^2, projections give m cells each: ratio = alpha^2
  CHECK(report.ratio == doctest::Approx(alpha * alpha).epsilon(1e-12));
  CHECK(report.lhs <= report.rhs);
  CHECK(report.constant_estimate == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("visual check rejects bad inputs") {
  const auto cloud = grid2d(3, 0.1);
  PerceptivityVerdict certified;
  certified.status = VerdictStatus::Certified;
  CHECK_THROWS_AS(
      visual_check(td::young(), PointCloud::make(2, {Eigen::Vector2d(0, 0)}), 0.1,
                   {0.5, 0.5, 0.5}, 0.0, certified),
      InvalidInput);
  PerceptivityVerdict unknown;
  CHECK_THROWS_AS(visual_check(td::two_line_projectors(), cloud, 0.1, {0.5, 0.5}, 0.0,
                               unknown),
                  InvalidInput);
  // but the override lets it through
  const auto report = visual_check(td::two_line_projectors(), cloud, 0.1, {0.5, 0.5},
                                   0.0, unknown, true);
  CHECK(report.ratio > 0.0);
}

TEST_CASE("fitted slope recovers power laws") {
  std::vector<double> deltas{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> values;
  for (double d : deltas) values.push_back(3.0 * std::pow(1.0 / d, 1.5));
  CHECK(fitted_log_slope(deltas, values) == doctest::Approx(1.5).epsilon(1e-9));
  CHECK_THROWS_AS(fitted_log_slope({0.5}, {1.0}), InvalidInput);
}
