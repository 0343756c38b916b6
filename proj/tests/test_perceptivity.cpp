#include <doctest.h>

#include <cmath>

#include "blb/perceptivity.hpp"
#include "datasets.hpp"

using namespace blb;
namespace td = blb::testdata;

namespace {
std::vector<double> uniform(int n, double c) { return std::vector<double>(n, c); }
}  // namespace

TEST_CASE("rank-one exact check resolves the Young threshold") {
  const Datum young = td::young();
  const double critical = 1.0 / std::sqrt(5.0);

  for (double c : {0.1, 0.3, 0.44}) {
    const auto verdict = rank_one_exact_check(young, uniform(3, c), 0.0);
    CHECK(verdict.status == VerdictStatus::Certified);
  }
  for (double c : {critical + 1e-3, 0.6, 1.0}) {
    const auto verdict = rank_one_exact_check(young, uniform(3, c), 0.0);
    CHECK(verdict.status == VerdictStatus::Refuted);
    REQUIRE(verdict.witness.has_value());
    CHECK(perceptivity_slack(young, uniform(3, c), 0.0, *verdict.witness) <
          -slack_tolerance(young));
  }
}

TEST_CASE("rank-one exact check input contracts") {
  CHECK_THROWS_AS(rank_one_exact_check(td::loomis_whitney(), uniform(3, 0.3), 0.0),
                  InvalidInput);
  std::vector<LinearMap> maps;
  for (int j = 0; j < 5; ++j) {
    Eigen::MatrixXd row = Eigen::MatrixXd::Zero(1, 5);
    row(0, j) = 1.0;
    maps.emplace_back(row);
  }
  Datum big(5, std::move(maps), uniform(5, 1.0));
  CHECK_THROWS_AS(rank_one_exact_check(big, uniform(5, 0.3), 0.0),
                  UnsupportedDimension);
}

TEST_CASE("perceptivity of coordinate-plane data") {
  const Datum lw = td::loomis_whitney();
  CHECK(check_perceptivity(lw, uniform(3, 0.3), 0.0).status ==
        VerdictStatus::Certified);

  // d_lambda needs alpha_3 < lambda: the x2 axis is seen by the third map only
  const Datum dl = td::d_lambda(0.25);
  const auto refuted = check_perceptivity(dl, uniform(3, 0.3), 0.0);
  CHECK(refuted.status == VerdictStatus::Refuted);
  REQUIRE(refuted.witness.has_value());
  CHECK(perceptivity_slack(dl, uniform(3, 0.3), 0.0, *refuted.witness) <
        -slack_tolerance(dl));
  // the x2 axis is an explicit violation as well
  const Subspace e2 = Subspace::span(Eigen::VectorXd(Eigen::Vector3d(0, 1, 0)));
  CHECK(perceptivity_slack(dl, uniform(3, 0.3), 0.0, e2) < -slack_tolerance(dl));

  const auto fine = check_perceptivity(dl, {0.3, 0.3, 0.2}, 0.0);
  CHECK(fine.status == VerdictStatus::Certified);
}

TEST_CASE("verdict is monotone in alpha and beta") {
  const Datum young = td::young();
  for (double c : {0.1, 0.25, 0.4}) {
    CHECK(check_perceptivity(young, uniform(3, c), 0.0).status ==
          VerdictStatus::Certified);
  }
  // a refuted pair stays refuted for smaller beta, certified for larger
  const double c = 0.5;
  CHECK(check_perceptivity(young, uniform(3, c), 0.0).status ==
        VerdictStatus::Refuted);
  CHECK(check_perceptivity(young, uniform(3, c), 2.0).status ==
        VerdictStatus::Certified);
}

TEST_CASE("slack agrees with acuity arithmetic") {
  const Datum sub = td::lw_two_maps();
  const Subspace e2 = Subspace::span(Eigen::VectorXd(Eigen::Vector3d(0, 1, 0)));
  // A(D|e2) = 1/2, dim W = 1
  CHECK(perceptivity_slack(sub, uniform(2, 0.5), 0.0, e2) ==
        doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(perceptivity_slack(sub, uniform(2, 0.5), 1.0, e2) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("beta_min on degenerate and healthy data") {
  auto [b_sub, w_sub] = beta_min_estimate(td::lw_two_maps());
  CHECK(b_sub == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(algebraic_perceptivity_defect(td::lw_two_maps(), w_sub) ==
        doctest::Approx(-1.0).epsilon(1e-9));

  auto [b_lw, w_lw] = beta_min_estimate(td::loomis_whitney());
  CHECK(b_lw == doctest::Approx(0.0).epsilon(1e-9));
  auto [b_young, w_young] = beta_min_estimate(td::young());
  CHECK(b_young == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("projector sufficient condition") {
  const Datum boxes = td::two_line_projectors();
  const auto verdict = projector_sufficient_check(boxes, uniform(2, 0.3), 0.0);
  CHECK(verdict.status != VerdictStatus::Refuted);
  CHECK_THROWS_AS(projector_sufficient_check(td::young(), uniform(3, 0.3), 0.0),
                  InvalidInput);
}

TEST_CASE("candidate lattice contains the kernels") {
  const Datum dl = td::d_lambda(0.25);
  const auto lattice = candidate_lattice(dl, uniform(3, 0.3));
  bool found_e2 = false;
  const Eigen::Vector3d e2(0, 1, 0);
  for (const Subspace& w : lattice) {
    if (w.dim() == 1 && w.contains(e2, 1e-6)) found_e2 = true;
  }
  CHECK(found_e2);
}
