#pragma once

#include <vector>

#include "blb/datum.hpp"
#include "blb/perceptivity.hpp"

namespace blb {

/// Finite subset of the closed unit ball of R^d.
struct PointCloud {
  int ambient_dim = 0;
  std::vector<Eigen::VectorXd> points;

  /// Validates dimensions and the unit-ball containment.
  static PointCloud make(int ambient_dim, std::vector<Eigen::VectorXd> points);
};

struct CoveringEstimate {
  double delta = 0.0;
  long cell_count = 0;       // occupied half-open delta-grid cells, origin anchored
  long separated_count = 0;  // greedy maximal delta-separated subset, input order
};

/// Box-counting proxies for the delta-covering number. cell_count is an upper
/// proxy, separated_count a lower proxy; both are exact only up to the usual
/// dimensional net-comparison constants.
CoveringEstimate covering_estimate(const PointCloud& cloud, double delta);

/// Coordinates of the orthogonal projection onto W, expressed in W's frame.
PointCloud project_cloud(const PointCloud& cloud, const Subspace& w);

struct VisualReport {
  double lhs = 0.0;               // covering proxy of the cloud itself
  double rhs = 0.0;               // delta^{-beta} prod alpha^{-q dim H} prod N^{q}
  double ratio = 0.0;             // lhs / rhs
  double constant_estimate = 0.0; // (1 + sum q)^{(A - d + beta)/2} E(D)
};

/// Evaluates both sides of the covering-number inequality on a finite cloud.
/// The datum must consist of orthogonal projectors, and the perceptivity
/// verdict is recorded by the caller (Certified, or an explicit override).
VisualReport visual_check(const Datum& projector_datum, const PointCloud& cloud,
                          double delta, const std::vector<double>& alphas, double beta,
                          const PerceptivityVerdict& perceptivity,
                          bool force_unknown = false);

/// Least-squares slope of log(ratio * delta^beta... ) diagnostics: fits
/// log(values) against log(1/deltas). Used for exponent-sharpness experiments.
double fitted_log_slope(const std::vector<double>& deltas,
                        const std::vector<double>& values);

}  // namespace blb
