#include "blb/datum.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace blb {

Datum::Datum(int ambient_dim, std::vector<LinearMap> maps, std::vector<double> weights)
    : d_(ambient_dim), maps_(std::move(maps)), weights_(std::move(weights)) {
  codomain_dims_.reserve(maps_.size());
  for (const auto& m : maps_) {
    // a projector's codomain is its image, not the ambient copy it sits in
    codomain_dims_.push_back(m.is_orthogonal_projector() ? m.rank() : m.rows());
  }
  validate();
}

Datum::Datum(int ambient_dim, std::vector<LinearMap> maps, std::vector<double> weights,
             std::vector<int> codomain_dims)
    : d_(ambient_dim),
      maps_(std::move(maps)),
      weights_(std::move(weights)),
      codomain_dims_(std::move(codomain_dims)) {
  validate();
}

void Datum::validate() const {
  if (d_ < 1) throw InvalidInput("Datum: ambient_dim must be positive");
  if (maps_.empty()) throw InvalidInput("Datum: at least one map required");
  if (maps_.size() != weights_.size() || maps_.size() != codomain_dims_.size()) {
    throw InvalidInput("Datum: maps, weights and codomain dims must align");
  }
  for (size_t j = 0; j < maps_.size(); ++j) {
    if (maps_[j].cols() != d_) {
      throw InvalidInput("Datum: map " + std::to_string(j) + " has wrong source dim");
    }
    if (!(weights_[j] > 0.0) || !std::isfinite(weights_[j])) {
      throw InvalidInput("Datum: weights must be strictly positive");
    }
    if (codomain_dims_[j] < 0 || codomain_dims_[j] > maps_[j].rows()) {
      throw InvalidInput("Datum: bad codomain dimension");
    }
  }
}

double Datum::weight_sum() const {
  double s = 0.0;
  for (double q : weights_) s += q;
  return s;
}

bool Datum::all_orthogonal_projectors(double tau) const {
  for (const auto& m : maps_) {
    if (!m.is_orthogonal_projector(tau)) return false;
  }
  return true;
}

bool Datum::all_rank_one() const {
  for (const auto& m : maps_) {
    if (m.rank() != 1) return false;
  }
  return true;
}

LocalizedRegularizedDatum::LocalizedRegularizedDatum(Datum d, std::vector<SpdMatrix> r,
                                                     SpdMatrix t)
    : datum(std::move(d)), regs(std::move(r)), loc(std::move(t)) {
  if (static_cast<int>(regs.size()) != datum.size()) {
    throw InvalidInput("LocalizedRegularizedDatum: one regulariser per map required");
  }
  for (int j = 0; j < datum.size(); ++j) {
    if (regs[j].dim() != datum.map(j).rows()) {
      throw InvalidInput("LocalizedRegularizedDatum: R_j dimension mismatch");
    }
  }
  if (loc.dim() != datum.ambient_dim()) {
    throw InvalidInput("LocalizedRegularizedDatum: T dimension mismatch");
  }
}

std::pair<bool, double> is_globally_critical(const Datum& datum) {
  double defect = -datum.ambient_dim();
  for (int j = 0; j < datum.size(); ++j) {
    defect += datum.weight(j) * datum.codomain_dim(j);
  }
  const double tau = tol::crit_per_dim * datum.ambient_dim();
  return {std::abs(defect) <= tau, defect};
}

double essential_acuity(const Datum& datum, const std::vector<double>& alphas,
                        const Subspace& w) {
  if (static_cast<int>(alphas.size()) != datum.size()) {
    throw InvalidInput("essential_acuity: one alpha per map required");
  }
  if (w.ambient_dim() != datum.ambient_dim()) {
    throw InvalidInput("essential_acuity: subspace dimension mismatch");
  }
  double acc = 0.0;
  for (int j = 0; j < datum.size(); ++j) {
    acc += datum.weight(j) * essential_rank(datum.map(j), w, alphas[j]);
  }
  return acc;
}

double total_acuity(const Datum& datum) {
  double acc = 0.0;
  for (int j = 0; j < datum.size(); ++j) {
    acc += datum.weight(j) * datum.codomain_dim(j);
  }
  return acc;
}

double exponential_entropy(const Datum& datum) {
  double log_acc = 0.0;
  for (int j = 0; j < datum.size(); ++j) {
    log_acc += -datum.weight(j) * datum.codomain_dim(j) * 0.5 * std::log(datum.weight(j));
  }
  return std::exp(log_acc);
}

std::pair<Datum, double> projector_reduction(const Datum& datum) {
  const int d = datum.ambient_dim();
  std::vector<LinearMap> projectors;
  std::vector<int> dims;
  double log_distortion = 0.0;
  for (int j = 0; j < datum.size(); ++j) {
    const LinearMap& m = datum.map(j);
    const int r = m.rank();
    if (r != datum.codomain_dim(j)) {
      throw NotSurjective("projector_reduction: map " + std::to_string(j) +
                          " is not surjective onto its codomain");
    }
    // pi_j projects onto ker(l_j)^perp = span of the top right singular vectors
    const Eigen::MatrixXd vr = m.svd().v.leftCols(r);
    projectors.emplace_back(vr * vr.transpose());
    dims.push_back(r);
    for (int i = 0; i < r; ++i) {
      log_distortion += -datum.weight(j) * std::log(m.svd().sigma(i));
    }
  }
  Datum proj(d, std::move(projectors), datum.weights(), std::move(dims));
  return {std::move(proj), std::exp(log_distortion)};
}

double gram_norm(const LocalizedRegularizedDatum& lrd) {
  const int d = lrd.datum.ambient_dim();
  Eigen::MatrixXd m = lrd.loc.matrix();
  for (int j = 0; j < lrd.datum.size(); ++j) {
    const Eigen::MatrixXd& l = lrd.datum.map(j).matrix();
    m += lrd.datum.weight(j) * l.transpose() * lrd.regs[j].matrix() * l;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double algebraic_perceptivity_defect(const Datum& datum, const Subspace& w) {
  if (w.ambient_dim() != datum.ambient_dim()) {
    throw InvalidInput("algebraic_perceptivity_defect: dimension mismatch");
  }
  double acc = -static_cast<double>(w.dim());
  for (int j = 0; j < datum.size(); ++j) {
    acc += datum.weight(j) * essential_rank(datum.map(j), w, 0.0);
  }
  return acc;
}

}  // namespace blb
