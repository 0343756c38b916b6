#include "blb/bounds.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <limits>
#include <sstream>

namespace blb {

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::UpperGlobal: return "UPPER_GLOBAL";
    case BoundKind::UpperVariant: return "UPPER_VARIANT";
    case BoundKind::LowerGlobal: return "LOWER_GLOBAL";
    case BoundKind::UpperLocalized: return "UPPER_LOCALIZED";
    default: return "LOWER_LOCALIZED";
  }
}

bool BoundReport::all_hypotheses_pass() const {
  for (const Hypothesis& h : hypotheses) {
    if (!h.passed) return false;
  }
  return true;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void validate_alphas(const Datum& datum, const std::vector<double>& alphas) {
  if (static_cast<int>(alphas.size()) != datum.size()) {
    throw InvalidInput("bounds: one alpha per map required");
  }
  for (double a : alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw InvalidInput("bounds: alphas must be strictly positive");
    }
  }
}

void echo_alphas(BoundReport& report, const std::vector<double>& alphas) {
  std::ostringstream os;
  for (size_t i = 0; i < alphas.size(); ++i) {
    if (i) os << ",";
    os << alphas[i];
  }
  report.inputs_echo.emplace_back("alphas", os.str());
}

Hypothesis criticality_hypothesis(const Datum& datum, const char* name) {
  auto [ok, defect] = is_globally_critical(datum);
  return {name, ok, "defect=" + fmt(defect)};
}

Hypothesis perceptivity_hypothesis(const PerceptivityVerdict& verdict,
                                   bool force_unknown) {
  Hypothesis h;
  h.name = "perceptivity";
  if (verdict.status == VerdictStatus::Certified) {
    h.passed = true;
    h.detail = std::string("CERTIFIED via ") + to_string(verdict.method);
  } else if (verdict.status == VerdictStatus::Unknown && force_unknown) {
    h.passed = true;
    h.detail = "UNKNOWN accepted by caller override";
  } else {
    h.passed = false;
    h.detail = to_string(verdict.status);
  }
  return h;
}

void finalize(BoundReport& report, double log_value) {
  if (report.all_hypotheses_pass()) {
    report.finite = true;
    report.value = std::exp(log_value);
  } else {
    report.finite = false;
    report.value = std::numeric_limits<double>::infinity();
  }
}

double log_alpha_product(const Datum& datum, const std::vector<double>& alphas) {
  double acc = 0.0;
  for (int j = 0; j < datum.size(); ++j) {
    acc += -datum.weight(j) * datum.codomain_dim(j) * std::log(alphas[j]);
  }
  return acc;
}

}  // namespace

BoundReport upper_bound_global(const Datum& datum, const std::vector<double>& alphas,
                               const PerceptivityVerdict& perceptivity,
                               bool force_unknown) {
  validate_alphas(datum, alphas);
  BoundReport report;
  report.kind = BoundKind::UpperGlobal;
  echo_alphas(report, alphas);
  report.hypotheses.push_back(criticality_hypothesis(datum, "global criticality"));
  report.hypotheses.push_back(perceptivity_hypothesis(perceptivity, force_unknown));

  const double d = datum.ambient_dim();
  const double log_value = 0.5 * d * std::log(d) + std::log(exponential_entropy(datum)) +
                           log_alpha_product(datum, alphas);
  finalize(report, log_value);
  return report;
}

BoundReport upper_bound_variant(const Datum& datum, const std::vector<double>& alphas,
                                const PerceptivityVerdict& proj_perceptivity,
                                bool force_unknown) {
  validate_alphas(datum, alphas);
  auto [proj, distortion] = projector_reduction(datum);  // throws NotSurjective

  BoundReport report;
  report.kind = BoundKind::UpperVariant;
  echo_alphas(report, alphas);
  report.inputs_echo.emplace_back("distortion", fmt(distortion));
  report.hypotheses.push_back(
      criticality_hypothesis(proj, "global criticality (projector datum)"));
  report.hypotheses.push_back(perceptivity_hypothesis(proj_perceptivity, force_unknown));

  const double d = datum.ambient_dim();
  const double log_value = 0.5 * d * std::log(d) + std::log(exponential_entropy(datum)) +
                           std::log(distortion) + log_alpha_product(datum, alphas);
  finalize(report, log_value);
  return report;
}

namespace {

double restricted_rank_sum(const Datum& datum, double alpha, const Subspace& w) {
  double acc = 0.0;
  for (int j = 0; j < datum.size(); ++j) {
    acc += datum.weight(j) * essential_rank(datum.map(j), w, alpha);
  }
  return acc;
}

double sup_operator_norm(const Datum& datum) {
  double c = 0.0;
  for (const LinearMap& m : datum.maps()) c = std::max(c, m.operator_norm());
  return c;
}

}  // namespace

BoundReport lower_bound_global(const Datum& datum, double alpha, const Subspace& w) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    throw InvalidInput("lower_bound_global: alpha must lie in (0, 1]");
  }
  if (w.ambient_dim() != datum.ambient_dim()) {
    throw InvalidInput("lower_bound_global: subspace dimension mismatch");
  }
  BoundReport report;
  report.kind = BoundKind::LowerGlobal;
  report.inputs_echo.emplace_back("alpha", fmt(alpha));
  report.inputs_echo.emplace_back("dim_w", fmt(w.dim()));

  const double c = 1.0 + sup_operator_norm(datum);
  const double d = datum.ambient_dim();
  const double exponent = restricted_rank_sum(datum, alpha, w) - w.dim();
  const double log_value =
      -0.5 * d * std::log(c * c * datum.weight_sum()) + exponent * std::log(alpha);
  finalize(report, log_value);
  return report;
}

BoundReport upper_bound_localized(const LocalizedRegularizedDatum& lrd,
                                  const std::vector<double>& alphas, double beta,
                                  const PerceptivityVerdict& perceptivity,
                                  bool force_unknown) {
  const Datum& datum = lrd.datum;
  validate_alphas(datum, alphas);
  if (!(beta >= 0.0)) throw InvalidInput("upper_bound_localized: beta must be >= 0");
  for (int j = 0; j < datum.size(); ++j) {
    if (essential_rank(datum.map(j), alphas[j]) != datum.codomain_dim(j)) {
      throw RankDeficient("upper_bound_localized: rk_alpha(l_" + std::to_string(j) +
                          ") < dim H_" + std::to_string(j));
    }
  }
  BoundReport report;
  report.kind = BoundKind::UpperLocalized;
  echo_alphas(report, alphas);
  report.inputs_echo.emplace_back("beta", fmt(beta));
  report.hypotheses.push_back(perceptivity_hypothesis(perceptivity, force_unknown));

  const double d = datum.ambient_dim();
  const double acuity = total_acuity(datum);
  const double n = gram_norm(lrd);
  const double inv_t_norm = 1.0 / lrd.loc.min_eigenvalue();
  const double log_value = 0.5 * acuity * std::log(d) +
                           std::log(exponential_entropy(datum)) +
                           log_alpha_product(datum, alphas) +
                           0.5 * (acuity - d + beta) * std::log(n) +
                           0.5 * beta * std::log(inv_t_norm);
  finalize(report, log_value);
  return report;
}

BoundReport lower_bound_localized(const Datum& datum, double t, double alpha,
                                  const Subspace& w) {
  if (!(t > 0.0)) throw InvalidInput("lower_bound_localized: t must be positive");
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    throw InvalidInput("lower_bound_localized: alpha must lie in (0, 1]");
  }
  if (w.ambient_dim() != datum.ambient_dim()) {
    throw InvalidInput("lower_bound_localized: subspace dimension mismatch");
  }
  BoundReport report;
  report.kind = BoundKind::LowerLocalized;
  report.inputs_echo.emplace_back("t", fmt(t));
  report.inputs_echo.emplace_back("alpha", fmt(alpha));
  report.inputs_echo.emplace_back("dim_w", fmt(w.dim()));

  const double c = 1.0 + sup_operator_norm(datum);
  const double d = datum.ambient_dim();
  const double base = (c / alpha) * (c / alpha) * t + c * c * datum.weight_sum();
  const double exponent = restricted_rank_sum(datum, alpha, w) - w.dim();
  const double log_value = -0.5 * d * std::log(base) + exponent * std::log(alpha);
  finalize(report, log_value);
  return report;
}

namespace {

// Distance of v to the span of the given columns.
double dist_to_span(const Eigen::VectorXd& v, const std::vector<Eigen::VectorXd>& cols) {
  if (cols.empty()) return v.norm();
  Eigen::MatrixXd b(v.size(), cols.size());
  for (size_t i = 0; i < cols.size(); ++i) b.col(i) = cols[i];
  Eigen::VectorXd coeffs = b.colPivHouseholderQr().solve(v);
  return (v - b * coeffs).norm();
}

double wedge_norm(const std::vector<Eigen::VectorXd>& cols) {
  if (cols.empty()) return 1.0;
  Eigen::MatrixXd b(cols[0].size(), cols.size());
  for (size_t i = 0; i < cols.size(); ++i) b.col(i) = cols[i];
  Eigen::MatrixXd gram = b.transpose() * b;
  const double det = gram.determinant();
  return det > 0.0 ? std::sqrt(det) : 0.0;
}

}  // namespace

GreedyCertificate greedy_index_sets(const Datum& datum, const SpdMatrix& m) {
  const int d = datum.ambient_dim();
  if (m.dim() != d) throw InvalidInput("greedy_index_sets: M must act on H");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.matrix());
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw InvalidInput("greedy_index_sets: M must be positive definite");
  }
  GreedyCertificate cert;
  cert.basis.resize(d, d);
  cert.eigenvalues.resize(d);
  for (int i = 0; i < d; ++i) {
    // Eigen returns ascending; the construction wants lambda_1 >= ... >= lambda_d
    cert.basis.col(i) = es.eigenvectors().col(d - 1 - i);
    cert.eigenvalues(i) = es.eigenvalues()(d - 1 - i);
  }

  const double threshold = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < datum.size(); ++j) {
    const Eigen::MatrixXd& l = datum.map(j).matrix();
    std::vector<int> indices;           // ascending at the end
    std::vector<Eigen::VectorXd> taken; // images l e_m for m already in I_j
    for (int i = d; i >= 1; --i) {
      Eigen::VectorXd image = l * cert.basis.col(i - 1);
      // ties at exactly 1/sqrt(d) are included
      if (dist_to_span(image, taken) >= threshold * (1.0 - 1e-12)) {
        indices.push_back(i);
        taken.push_back(std::move(image));
      }
    }
    std::sort(indices.begin(), indices.end());
    cert.index_sets.push_back(std::move(indices));
  }
  return cert;
}

bool verify_greedy_certificate(const Datum& datum, const GreedyCertificate& cert,
                               double tau) {
  const int d = datum.ambient_dim();
  const double threshold = 1.0 / std::sqrt(static_cast<double>(d));
  if (static_cast<int>(cert.index_sets.size()) != datum.size()) return false;
  for (int j = 0; j < datum.size(); ++j) {
    const Eigen::MatrixXd& l = datum.map(j).matrix();
    const std::vector<int>& idx = cert.index_sets[j];
    auto images_with = [&](auto pred) {
      std::vector<Eigen::VectorXd> cols;
      for (int m : idx) {
        if (pred(m)) cols.push_back(l * cert.basis.col(m - 1));
      }
      return cols;
    };
    for (int i : idx) {
      const double dist = dist_to_span(l * cert.basis.col(i - 1),
                                       images_with([&](int m) { return m > i; }));
      if (dist < threshold - tau) return false;
    }
    for (int i = 1; i <= d; ++i) {
      const double dist = dist_to_span(l * cert.basis.col(i - 1),
                                       images_with([&](int m) { return m >= i; }));
      if (dist >= threshold + tau) return false;
    }
    std::vector<Eigen::VectorXd> all = images_with([](int) { return true; });
    const double bound = std::pow(static_cast<double>(d),
                                  -0.5 * static_cast<double>(idx.size()));
    if (wedge_norm(all) < bound * (1.0 - tau)) return false;
  }
  return true;
}

}  // namespace blb
