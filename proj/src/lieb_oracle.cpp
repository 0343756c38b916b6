#include "blb/lieb_oracle.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

namespace blb {

namespace {

double log_det_spd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev <= 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(ev);
  }
  return acc;
}

Eigen::MatrixXd gram(const LocalizedRegularizedDatum& lrd,
                     const std::vector<Eigen::MatrixXd>& a) {
  Eigen::MatrixXd m = lrd.loc.matrix();
  for (int j = 0; j < lrd.datum.size(); ++j) {
    const Eigen::MatrixXd& l = lrd.datum.map(j).matrix();
    m += lrd.datum.weight(j) * l.transpose() * a[j] * l;
  }
  return m;
}

double log_functional(const LocalizedRegularizedDatum& lrd,
                      const std::vector<Eigen::MatrixXd>& a) {
  double acc = 0.0;
  for (int j = 0; j < lrd.datum.size(); ++j) {
    acc += lrd.datum.weight(j) * log_det_spd(a[j]);
  }
  return 0.5 * (acc - log_det_spd(gram(lrd, a)));
}

/// Largest A' <= r in the Loewner order among r^{1/2} S r^{1/2} clampings of
/// the target; eigenvalues are also floored away from zero to keep A' > 0.
Eigen::MatrixXd loewner_clip(const Eigen::MatrixXd& target, const SpdMatrix& r) {
  Eigen::LLT<Eigen::MatrixXd> llt(r.matrix());
  const Eigen::MatrixXd l = llt.matrixL();
  const Eigen::MatrixXd s =
      llt.matrixL().solve(llt.matrixL().solve(target.transpose()).transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (s + s.transpose()));
  Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) ev(i) = std::clamp(ev(i), 1e-12, 1.0);
  const Eigen::MatrixXd clipped =
      es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  Eigen::MatrixXd out = l * clipped * l.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace

double lieb_functional(const LocalizedRegularizedDatum& lrd, const GaussianInput& a) {
  if (static_cast<int>(a.a.size()) != lrd.datum.size()) {
    throw InvalidInput("lieb_functional: one A_j per map required");
  }
  std::vector<Eigen::MatrixXd> mats;
  for (int j = 0; j < lrd.datum.size(); ++j) {
    if (a.a[j].dim() != lrd.datum.map(j).rows()) {
      throw InvalidInput("lieb_functional: A_j dimension mismatch");
    }
    if (a.a[j].min_eigenvalue() <= 0.0) {
      throw InvalidInput("lieb_functional: A_j must be positive definite");
    }
    Eigen::MatrixXd slack = lrd.regs[j].matrix() - a.a[j].matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(slack, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::loewner * lrd.regs[j].max_eigenvalue()) {
      throw InvalidInput("lieb_functional: A_j exceeds R_j in the Loewner order");
    }
    mats.push_back(a.a[j].matrix());
  }
  return std::exp(log_functional(lrd, mats));
}

namespace {

struct AscentOutcome {
  std::vector<Eigen::MatrixXd> a;
  double log_value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

AscentOutcome run_ascent(const LocalizedRegularizedDatum& lrd,
                         std::vector<Eigen::MatrixXd> a, const OracleOptions& opts) {
  AscentOutcome out;
  double current = log_functional(lrd, a);
  out.trace.push_back(std::exp(current));
  int calm = 0;
  for (int it = 0; it < opts.max_iter; ++it) {
    const Eigen::MatrixXd m = gram(lrd, a);
    const Eigen::MatrixXd m_inv = m.ldlt().solve(
        Eigen::MatrixXd::Identity(m.rows(), m.cols()));

    std::vector<Eigen::MatrixXd> target(a.size());
    for (size_t j = 0; j < a.size(); ++j) {
      const Eigen::MatrixXd& l = lrd.datum.map(j).matrix();
      Eigen::MatrixXd b = l * m_inv * l.transpose();
      b = 0.5 * (b + b.transpose());
      // stationarity: A_j = (l_j M^{-1} l_j^*)^{-1}; rank-deficient directions
      // blow up and are then absorbed by the clip against R_j
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
      const double floor = 1e-14 * std::max(1.0, es.eigenvalues().maxCoeff());
      Eigen::VectorXd inv_ev(es.eigenvalues().size());
      for (int i = 0; i < inv_ev.size(); ++i) {
        inv_ev(i) = 1.0 / std::max(es.eigenvalues()(i), floor);
      }
      Eigen::MatrixXd t =
          es.eigenvectors() * inv_ev.asDiagonal() * es.eigenvectors().transpose();
      target[j] = loewner_clip(t, lrd.regs[j]);
    }

    // damped step: the feasible set is convex, so blends stay admissible
    double step = opts.damping;
    double next = -std::numeric_limits<double>::infinity();
    std::vector<Eigen::MatrixXd> trial(a.size());
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      for (size_t j = 0; j < a.size(); ++j) {
        trial[j] = (1.0 - step) * a[j] + step * target[j];
      }
      next = log_functional(lrd, trial);
      if (next >= current) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++out.iterations;
    if (!accepted) {
      out.trace.push_back(std::exp(current));
      ++calm;
    } else {
      const double rel = (next - current) / std::max(1.0, std::abs(current));
      a.swap(trial);
      current = next;
      out.trace.push_back(std::exp(current));
      calm = rel < opts.tol_rel ? calm + 1 : 0;
    }
    if (calm >= 5) {
      out.converged = true;
      break;
    }
  }
  out.a = std::move(a);
  out.log_value = current;
  return out;
}

std::vector<Eigen::MatrixXd> deterministic_start(const LocalizedRegularizedDatum& lrd) {
  std::vector<Eigen::MatrixXd> a;
  for (int j = 0; j < lrd.datum.size(); ++j) {
    const int n = lrd.datum.map(j).rows();
    const double scale = std::min(1.0, lrd.regs[j].min_eigenvalue());
    a.push_back(std::max(scale, 1e-12) * Eigen::MatrixXd::Identity(n, n));
  }
  return a;
}

std::vector<Eigen::MatrixXd> random_start(const LocalizedRegularizedDatum& lrd,
                                          std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::MatrixXd> a;
  for (int j = 0; j < lrd.datum.size(); ++j) {
    const int n = lrd.datum.map(j).rows();
    Eigen::MatrixXd g(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) g(r, c) = gauss(rng);
    }
    Eigen::MatrixXd spd = g * g.transpose() / n + 1e-6 * Eigen::MatrixXd::Identity(n, n);
    a.push_back(loewner_clip(spd, lrd.regs[j]));
  }
  return a;
}

}  // namespace

OracleResult maximize_gaussian(const LocalizedRegularizedDatum& lrd,
                               const OracleOptions& opts) {
  std::vector<std::vector<Eigen::MatrixXd>> starts;
  starts.push_back(deterministic_start(lrd));
  std::mt19937_64 rng(opts.seed);
  for (int r = 0; r < opts.restarts; ++r) starts.push_back(random_start(lrd, rng));

  std::vector<AscentOutcome> outcomes(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < static_cast<int>(starts.size()); ++s) {
    outcomes[s] = run_ascent(lrd, starts[s], opts);
  }

  // max over restarts; ties resolved toward the earliest start for determinism
  size_t best = 0;
  for (size_t s = 1; s < outcomes.size(); ++s) {
    if (outcomes[s].log_value > outcomes[best].log_value) best = s;
  }
  OracleResult result;
  result.value = std::exp(outcomes[best].log_value);
  for (const Eigen::MatrixXd& m : outcomes[best].a) {
    result.argmax.a.emplace_back(m);
  }
  result.iterations = outcomes[best].iterations;
  result.converged = outcomes[best].converged;
  result.functional_trace = std::move(outcomes[best].trace);
  return result;
}

Schedule Schedule::standard() {
  Schedule s;
  for (int k = 0; k <= 6; ++k) {
    s.t_values.push_back(std::pow(10.0, k));
    s.epsilon_values.push_back(std::pow(10.0, -k));
  }
  return s;
}

BlLimitResult bl_limit(const Datum& datum, const Schedule& schedule,
                       const OracleOptions& opts) {
  if (schedule.t_values.empty() || schedule.epsilon_values.empty()) {
    throw InvalidInput("bl_limit: schedule must be nonempty");
  }
  BlLimitResult result;
  const int d = datum.ambient_dim();
  std::vector<double> per_t_limits;
  double prev_eps_value = 0.0;
  for (double t : schedule.t_values) {
    std::vector<SpdMatrix> regs;
    for (int j = 0; j < datum.size(); ++j) {
      regs.push_back(SpdMatrix::identity(datum.map(j).rows(), t));
    }
    double last = 0.0;
    double prev = 0.0;
    for (double eps : schedule.epsilon_values) {
      LocalizedRegularizedDatum lrd(datum, regs, SpdMatrix::identity(d, eps));
      OracleResult r = maximize_gaussian(lrd, opts);
      result.trace.push_back({t, eps, r.value, r.converged});
      prev = last;
      last = r.value;
    }
    per_t_limits.push_back(last);
    if (t == schedule.t_values.back()) prev_eps_value = prev;
  }
  result.estimate = per_t_limits.back();

  // Richardson on the eps sweep at the final t (geometric ratio assumed from
  // the schedule); falls back to the raw value for single-point sweeps
  if (schedule.epsilon_values.size() >= 2) {
    const size_t n = schedule.epsilon_values.size();
    const double rho = schedule.epsilon_values[n - 1] / schedule.epsilon_values[n - 2];
    result.extrapolated =
        (result.estimate - rho * prev_eps_value) / (1.0 - rho);
  } else {
    result.extrapolated = result.estimate;
  }
  return result;
}

}  // namespace blb
