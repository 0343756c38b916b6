#include "blb/visual.hpp"

#include <cmath>
#include <set>

namespace blb {

PointCloud PointCloud::make(int ambient_dim, std::vector<Eigen::VectorXd> points) {
  if (ambient_dim < 0) throw InvalidInput("PointCloud: negative dimension");
  for (const Eigen::VectorXd& p : points) {
    if (p.size() != ambient_dim) {
      throw InvalidInput("PointCloud: point dimension mismatch");
    }
    if (p.norm() > 1.0 + tol::orth) {
      throw InvalidInput("PointCloud: point outside the unit ball");
    }
  }
  PointCloud c;
  c.ambient_dim = ambient_dim;
  c.points = std::move(points);
  return c;
}

CoveringEstimate covering_estimate(const PointCloud& cloud, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw InvalidInput("covering_estimate: delta must lie in (0, 1)");
  }
  if (cloud.points.empty()) throw InvalidInput("covering_estimate: empty cloud");

  // half-open cells [k delta, (k+1) delta), anchored at the origin
  std::set<std::vector<long long>> cells;
  for (const Eigen::VectorXd& p : cloud.points) {
    std::vector<long long> key(cloud.ambient_dim);
    for (int i = 0; i < cloud.ambient_dim; ++i) {
      key[i] = static_cast<long long>(std::floor(p(i) / delta));
    }
    cells.insert(std::move(key));
  }

  std::vector<const Eigen::VectorXd*> kept;
  for (const Eigen::VectorXd& p : cloud.points) {
    bool separated = true;
    for (const Eigen::VectorXd* q : kept) {
      // small relative slack so exact-spacing grids are not split by roundoff
      if ((p - *q).norm() < delta * (1.0 - 1e-9)) {
        separated = false;
        break;
      }
    }
    if (separated) kept.push_back(&p);
  }

  CoveringEstimate est;
  est.delta = delta;
  est.cell_count = static_cast<long>(cells.size());
  est.separated_count = static_cast<long>(kept.size());
  return est;
}

PointCloud project_cloud(const PointCloud& cloud, const Subspace& w) {
  if (w.ambient_dim() != cloud.ambient_dim) {
    throw InvalidInput("project_cloud: subspace dimension mismatch");
  }
  std::vector<Eigen::VectorXd> projected;
  projected.reserve(cloud.points.size());
  for (const Eigen::VectorXd& p : cloud.points) {
    projected.emplace_back(w.frame().transpose() * p);
  }
  PointCloud out;
  out.ambient_dim = w.dim();
  out.points = std::move(projected);
  return out;
}

VisualReport visual_check(const Datum& projector_datum, const PointCloud& cloud,
                          double delta, const std::vector<double>& alphas, double beta,
                          const PerceptivityVerdict& perceptivity, bool force_unknown) {
  if (!projector_datum.all_orthogonal_projectors()) {
    throw InvalidInput("visual_check: datum must consist of orthogonal projectors");
  }
  if (static_cast<int>(alphas.size()) != projector_datum.size()) {
    throw InvalidInput("visual_check: one alpha per map required");
  }
  if (cloud.ambient_dim != projector_datum.ambient_dim()) {
    throw InvalidInput("visual_check: cloud dimension mismatch");
  }
  if (perceptivity.status != VerdictStatus::Certified && !force_unknown) {
    throw InvalidInput("visual_check: perceptivity not certified");
  }

  VisualReport report;
  report.lhs = static_cast<double>(covering_estimate(cloud, delta).cell_count);

  double log_rhs = -beta * std::log(delta);
  for (int j = 0; j < projector_datum.size(); ++j) {
    const double q = projector_datum.weight(j);
    log_rhs += -q * projector_datum.codomain_dim(j) * std::log(alphas[j]);
    const Subspace image = Subspace::span(projector_datum.map(j).matrix());
    const CoveringEstimate proj = covering_estimate(project_cloud(cloud, image), delta);
    log_rhs += q * std::log(static_cast<double>(proj.cell_count));
  }
  report.rhs = std::exp(log_rhs);
  report.ratio = report.lhs / report.rhs;

  const double d = projector_datum.ambient_dim();
  const double acuity = total_acuity(projector_datum);
  report.constant_estimate =
      std::pow(1.0 + projector_datum.weight_sum(), 0.5 * (acuity - d + beta)) *
      exponential_entropy(projector_datum);
  return report;
}

double fitted_log_slope(const std::vector<double>& deltas,
                        const std::vector<double>& values) {
  if (deltas.size() != values.size() || deltas.size() < 2) {
    throw InvalidInput("fitted_log_slope: need at least two samples");
  }
  const int n = static_cast<int>(deltas.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(1.0 / deltas[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace blb
