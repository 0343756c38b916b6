#include <doctest.h>

#include "blb/datum.hpp"
#include "datasets.hpp"

using namespace blb;
namespace td = blb::testdata;

TEST_CASE("global criticality") {
  auto [young_ok, young_defect] = is_globally_critical(td::young());
  CHECK(young_ok);
  CHECK(young_defect == doctest::Approx(0.0).epsilon(1e-12));

  auto [lw_ok, lw_defect] = is_globally_critical(td::loomis_whitney());
  CHECK(lw_ok);
  CHECK(lw_defect == doctest::Approx(0.0).epsilon(1e-12));

  auto [sub_ok, sub_defect] = is_globally_critical(td::lw_two_maps());
  CHECK(!sub_ok);
  CHECK(sub_defect == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("entropy and acuity") {
  CHECK(exponential_entropy(td::young()) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(exponential_entropy(td::loomis_whitney()) ==
        doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-12));
  CHECK(total_acuity(td::young()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(total_acuity(td::loomis_whitney()) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("projector codomain convention") {
  const Datum boxes = td::two_line_projectors();
  CHECK(boxes.codomain_dim(0) == 1);
  CHECK(boxes.codomain_dim(1) == 1);
  CHECK(is_globally_critical(boxes).first);
  // non-projector maps keep their row count
  CHECK(td::loomis_whitney().codomain_dim(0) == 2);
}

TEST_CASE("projector reduction and distortion") {
  auto [lw_proj, lw_upsilon] = projector_reduction(td::loomis_whitney());
  CHECK(lw_upsilon == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lw_proj.all_orthogonal_projectors());
  CHECK(lw_proj.codomain_dim(0) == 2);

  auto [dl_proj, dl_upsilon] = projector_reduction(td::d_lambda(0.25));
  CHECK(dl_upsilon == doctest::Approx(2.0).epsilon(1e-9));  // lambda^{-1/2}
  // kernels are unchanged by the reduction
  for (int j = 0; j < 3; ++j) {
    const Subspace ker =
        Subspace::span(td::d_lambda(0.25).map(j).svd().v).complement();
    REQUIRE(ker.dim() == 1);
    CHECK((dl_proj.map(j).matrix() * ker.frame()).norm() <= 1e-9);
  }

  // rank-deficient codomain: a zero row makes the map non-surjective
  std::vector<LinearMap> maps;
  maps.emplace_back(td::mat(2, 2, {1, 0, 0, 0}) * 0.5);
  CHECK_THROWS_AS(projector_reduction(Datum(2, std::move(maps), {1.0})), NotSurjective);
}

TEST_CASE("gram norm") {
  const Datum lw = td::loomis_whitney();
  std::vector<SpdMatrix> regs(3, SpdMatrix::identity(2));
  for (double eps : {1.0, 0.1, 0.001}) {
    LocalizedRegularizedDatum lrd(lw, regs, SpdMatrix::identity(3, eps));
    // sum q l^T l = I for Loomis-Whitney, so N = 1 + eps
    CHECK(gram_norm(lrd) == doctest::Approx(1.0 + eps).epsilon(1e-10));
  }
}

TEST_CASE("gram norm is monotone in the regularisers") {
  std::mt19937_64 rng(21);
  const Datum lw = td::loomis_whitney();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SpdMatrix> small, large;
    for (int j = 0; j < 3; ++j) {
      const SpdMatrix r = td::random_spd(2, rng);
      small.push_back(r);
      large.emplace_back(
          Eigen::MatrixXd(r.matrix() + 0.5 * Eigen::MatrixXd::Identity(2, 2)));
    }
    const SpdMatrix t = td::random_spd(3, rng);
    CHECK(gram_norm({lw, small, t}) <= gram_norm({lw, large, t}) + 1e-12);
  }
}

TEST_CASE("algebraic perceptivity defect") {
  const Datum sub = td::lw_two_maps();
  const Subspace e2 = Subspace::span(Eigen::VectorXd(Eigen::Vector3d(0, 1, 0)));
  // e2 is seen only by the first map: 1/2 * 1 - 1
  CHECK(algebraic_perceptivity_defect(sub, e2) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(algebraic_perceptivity_defect(sub, Subspace::full(3)) ==
        doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(algebraic_perceptivity_defect(td::loomis_whitney(), Subspace::full(3)) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("essential acuity at thresholds") {
  const Datum dl = td::d_lambda(0.25);
  const Subspace e2 = Subspace::span(Eigen::VectorXd(Eigen::Vector3d(0, 1, 0)));
  // third map sees e2 at scale lambda only
  CHECK(essential_acuity(dl, {0.3, 0.3, 0.3}, e2) == doctest::Approx(0.5));
  CHECK(essential_acuity(dl, {0.2, 0.2, 0.2}, e2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(essential_acuity(dl, {0.3, 0.3}, e2), InvalidInput);
}

TEST_CASE("datum validation") {
  std::vector<LinearMap> maps;
  maps.emplace_back(td::mat(1, 2, {1, 0}));
  CHECK_THROWS_AS(Datum(3, std::move(maps), {1.0}), InvalidInput);
  std::vector<LinearMap> maps2;
  maps2.emplace_back(td::mat(1, 2, {1, 0}));
  CHECK_THROWS_AS(Datum(2, std::move(maps2), {-1.0}), InvalidInput);
  CHECK_THROWS_AS(Datum(2, {}, {}), InvalidInput);
}
