#include "blb/perceptivity.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <random>

namespace blb {

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Certified: return "CERTIFIED";
    case VerdictStatus::Refuted: return "REFUTED";
    default: return "UNKNOWN";
  }
}

const char* to_string(SearchMethod m) {
  switch (m) {
    case SearchMethod::Enumeration: return "enumeration";
    case SearchMethod::RankOneExact: return "rank-one-exact";
    case SearchMethod::SufficientCondition: return "sufficient-condition";
    default: return "randomized-search";
  }
}

double perceptivity_slack(const Datum& datum, const std::vector<double>& alphas,
                          double beta, const Subspace& w) {
  return essential_acuity(datum, alphas, w) - w.dim() + beta;
}

namespace {

void validate_query(const Datum& datum, const std::vector<double>& alphas, double beta) {
  if (static_cast<int>(alphas.size()) != datum.size()) {
    throw InvalidInput("perceptivity: one alpha per map required");
  }
  for (double a : alphas) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw InvalidInput("perceptivity: alphas must be finite and non-negative");
    }
  }
  if (!(beta >= 0.0)) throw InvalidInput("perceptivity: beta must be non-negative");
}

Eigen::MatrixXd random_frame(int d, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(d, k);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < k; ++j) g(i, j) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
  return q;
}

Eigen::MatrixXd qr_retract(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  const int k = static_cast<int>(m.cols());
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), k);
  Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

// Penalty sum_j sum_{i > r_j} max(0, sigma_i(l_j|F)^2 - alpha_j^2) with
// Euclidean gradient in the frame F. grams[j] = l_j^T l_j.
double pattern_penalty(const std::vector<Eigen::MatrixXd>& grams,
                       const std::vector<double>& alphas, const std::vector<int>& ranks,
                       const Eigen::MatrixXd& f, Eigen::MatrixXd* grad) {
  const int k = static_cast<int>(f.cols());
  double total = 0.0;
  if (grad) grad->setZero(f.rows(), k);
  for (size_t j = 0; j < grams.size(); ++j) {
    Eigen::MatrixXd gf = grams[j] * f;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.transpose() * gf);
    const double a2 = alphas[j] * alphas[j];
    // eigenvalues ascending; descending position i corresponds to k-1-i
    for (int pos = ranks[j]; pos < k; ++pos) {
      const int idx = k - 1 - pos;
      const double excess = es.eigenvalues()(idx) - a2;
      if (excess > 0.0) {
        total += excess;
        if (grad) {
          const Eigen::VectorXd y = es.eigenvectors().col(idx);
          *grad += 2.0 * gf * (y * y.transpose());
        }
      }
    }
  }
  return total;
}

struct FeasibilityResult {
  double min_penalty = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd frame;
};

FeasibilityResult minimize_pattern_penalty(const std::vector<Eigen::MatrixXd>& grams,
                                           const std::vector<double>& alphas,
                                           const std::vector<int>& ranks, int d, int k,
                                           const std::vector<Eigen::MatrixXd>& starts,
                                           int max_iters) {
  FeasibilityResult best;
  for (const Eigen::MatrixXd& start : starts) {
    Eigen::MatrixXd f = start;
    Eigen::MatrixXd grad;
    double val = pattern_penalty(grams, alphas, ranks, f, &grad);
    for (int iter = 0; iter < max_iters && val > 1e-16; ++iter) {
      Eigen::MatrixXd sym = 0.5 * (f.transpose() * grad + grad.transpose() * f);
      Eigen::MatrixXd tangent = grad - f * sym;
      const double gnorm2 = tangent.squaredNorm();
      if (gnorm2 < 1e-24) break;
      double step = 0.5;
      bool accepted = false;
      while (step > 1e-14) {
        Eigen::MatrixXd cand = qr_retract(f - step * tangent);
        Eigen::MatrixXd cand_grad;
        const double cand_val = pattern_penalty(grams, alphas, ranks, cand, &cand_grad);
        if (cand_val < val - 1e-6 * step * gnorm2) {
          f = std::move(cand);
          grad = std::move(cand_grad);
          val = cand_val;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
    if (val < best.min_penalty) {
      best.min_penalty = val;
      best.frame = f;
      if (val <= 1e-16) break;
    }
  }
  (void)d;
  return best;
}

// Truncate or complete a frame to dimension k, deterministically.
Eigen::MatrixXd fit_frame_to_dim(const Eigen::MatrixXd& frame, int d, int k,
                                 std::mt19937_64& rng) {
  if (frame.cols() == k) return frame;
  if (frame.cols() > k) return frame.leftCols(k);
  Eigen::MatrixXd padded(d, k);
  padded.leftCols(frame.cols()) = frame;
  Eigen::MatrixXd extra = random_frame(d, k, rng);
  padded.rightCols(k - frame.cols()) = extra.leftCols(k - frame.cols());
  return qr_retract(padded);
}

bool same_subspace(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return false;
  return principal_angle_distance(a, b) < 1e-9;
}

void push_unique(std::vector<Subspace>& out, const Subspace& s, int cap) {
  if (static_cast<int>(out.size()) >= cap) return;
  if (s.dim() == 0) return;
  for (const Subspace& t : out) {
    if (same_subspace(t, s)) return;
  }
  out.push_back(s);
}

}  // namespace

std::vector<Subspace> candidate_lattice(const Datum& datum,
                                        const std::vector<double>& alphas, int cap) {
  const int d = datum.ambient_dim();
  std::vector<Subspace> gens;
  for (int j = 0; j < datum.size(); ++j) {
    const Svd& dec = datum.map(j).svd();
    const int n = static_cast<int>(dec.sigma.size());
    const double a = j < static_cast<int>(alphas.size()) ? alphas[j] : 0.0;
    // kernel (right singular vectors of negligible sigma, plus missing directions)
    const int r = datum.map(j).rank();
    if (r < d) {
      Eigen::MatrixXd full_v(d, d);
      full_v.leftCols(n) = dec.v;
      if (n < d) {
        // complete V to an orthonormal basis of the source
        Eigen::MatrixXd p =
            Eigen::MatrixXd::Identity(d, d) - dec.v * dec.v.transpose();
        Eigen::JacobiSVD<Eigen::MatrixXd> comp(p, Eigen::ComputeThinU);
        full_v.rightCols(d - n) = comp.matrixU().leftCols(d - n);
      }
      push_unique(gens, Subspace::span(Eigen::MatrixXd(full_v.rightCols(d - r))), cap);
    }
    // alpha-dead subspace: right singular directions at or below the threshold
    int dead_from = n;
    for (int i = 0; i < n; ++i) {
      if (dec.sigma(i) <= a + rank_gap(dec.sigma.size() ? dec.sigma(0) : 1.0)) {
        dead_from = i;
        break;
      }
    }
    if (dead_from < n) {
      push_unique(gens, Subspace::span(Eigen::MatrixXd(dec.v.rightCols(n - dead_from))), cap);
    }
    // spans of bottom-m right singular vectors
    for (int m = 1; m <= n; ++m) {
      push_unique(gens, Subspace::span(Eigen::MatrixXd(dec.v.rightCols(m))), cap);
    }
  }
  std::vector<Subspace> out = gens;
  for (const Subspace& g : gens) push_unique(out, g.complement(), cap);
  const size_t base = out.size();
  for (size_t i = 0; i < base; ++i) {
    for (size_t j = i + 1; j < base; ++j) {
      if (static_cast<int>(out.size()) >= cap) return out;
      push_unique(out, intersect(out[i], out[j]), cap);
      push_unique(out, subspace_sum(out[i], out[j]), cap);
    }
  }
  push_unique(out, Subspace::full(d), cap + 1);
  return out;
}

namespace {

// Shared exact engine: per dimension k, exhaust rank patterns below the
// violation threshold and decide their feasibility numerically.
PerceptivityVerdict exact_enumeration(const Datum& datum,
                                      const std::vector<double>& alphas, double beta,
                                      const SearchBudget& budget, SearchMethod method) {
  const int d = datum.ambient_dim();
  const double tau_slack = slack_tolerance(datum);
  PerceptivityVerdict verdict;
  verdict.method = method;
  verdict.min_slack = std::numeric_limits<double>::infinity();

  std::vector<Eigen::MatrixXd> grams;
  std::vector<int> max_rank;
  for (int j = 0; j < datum.size(); ++j) {
    grams.push_back(datum.map(j).matrix().transpose() * datum.map(j).matrix());
    max_rank.push_back(datum.map(j).rank());
  }

  std::vector<Subspace> lattice = candidate_lattice(datum, alphas, budget.lattice_cap);
  std::mt19937_64 rng(budget.seed);

  // k = d is exact: only W = H.
  {
    const double s = perceptivity_slack(datum, alphas, beta, Subspace::full(d));
    verdict.min_slack = std::min(verdict.min_slack, s);
    if (s < -tau_slack) {
      verdict.status = VerdictStatus::Refuted;
      verdict.witness = Subspace::full(d);
      return verdict;
    }
  }

  for (int k = 1; k < d; ++k) {
    // starts shared by all patterns of this dimension
    std::vector<Eigen::MatrixXd> starts;
    for (const Subspace& s : lattice) {
      if (s.dim() == 0) continue;
      starts.push_back(fit_frame_to_dim(s.frame(), d, k, rng));
    }
    for (int r = 0; r < budget.restarts; ++r) {
      starts.push_back(random_frame(d, k, rng));
    }
    verdict.samples_used += static_cast<long>(starts.size());

    // enumerate rank patterns by increasing weight
    std::vector<std::vector<int>> patterns;
    std::vector<int> caps;
    for (int j = 0; j < datum.size(); ++j) caps.push_back(std::min(max_rank[j], k));
    std::vector<int> cur(datum.size(), 0);
    for (;;) {
      patterns.push_back(cur);
      int pos = 0;
      while (pos < datum.size()) {
        if (++cur[pos] <= caps[pos]) break;
        cur[pos] = 0;
        ++pos;
      }
      if (pos == datum.size()) break;
    }
    auto weight_of = [&](const std::vector<int>& r) {
      double w = 0.0;
      for (int j = 0; j < datum.size(); ++j) w += datum.weight(j) * r[j];
      return w;
    };
    std::sort(patterns.begin(), patterns.end(),
              [&](const auto& a, const auto& b) { return weight_of(a) < weight_of(b); });

    std::vector<std::vector<int>> infeasible;
    double k_min_acuity = std::numeric_limits<double>::infinity();
    bool k_resolved = false;
    bool unknown_boundary = false;
    for (const std::vector<int>& pat : patterns) {
      const double w = weight_of(pat);
      if (w >= k - beta - 1e-15) {
        // no violation possible at or above this weight
        k_min_acuity = std::min(k_min_acuity, w);
        k_resolved = true;
        break;
      }
      bool dominated = false;
      for (const auto& inf : infeasible) {
        bool le = true;
        for (int j = 0; j < datum.size(); ++j) le = le && pat[j] <= inf[j];
        if (le) {
          dominated = true;
          break;
        }
      }
      if (dominated) continue;
      FeasibilityResult fr = minimize_pattern_penalty(grams, alphas, pat, d, k, starts,
                                                      budget.descent_steps);
      if (fr.min_penalty > tol::feas) {
        infeasible.push_back(pat);
        continue;
      }
      // candidate violation: confirm with the exact acuity at the found frame
      Subspace w_found = Subspace::from_frame(qr_retract(fr.frame));
      const double s = perceptivity_slack(datum, alphas, beta, w_found);
      verdict.min_slack = std::min(verdict.min_slack, s);
      if (s < -tau_slack) {
        verdict.status = VerdictStatus::Refuted;
        verdict.witness = w_found;
        return verdict;
      }
      // feasible at the boundary only: cannot certify this dimension
      unknown_boundary = true;
      k_min_acuity = std::min(k_min_acuity, essential_acuity(datum, alphas, w_found));
      k_resolved = true;
      break;
    }
    if (!k_resolved) {
      // every pattern below the threshold was infeasible
      k_min_acuity = k - beta;
    }
    verdict.min_slack = std::min(verdict.min_slack, k_min_acuity - k + beta);
    if (unknown_boundary) {
      verdict.status = VerdictStatus::Unknown;
      return verdict;
    }
  }
  verdict.status = VerdictStatus::Certified;
  return verdict;
}

}  // namespace

PerceptivityVerdict rank_one_exact_check(const Datum& datum,
                                         const std::vector<double>& alphas, double beta,
                                         const SearchBudget& budget) {
  validate_query(datum, alphas, beta);
  if (!datum.all_rank_one()) {
    throw InvalidInput("rank_one_exact_check: all maps must have rank one");
  }
  if (datum.ambient_dim() > budget.d_max_exact) {
    throw UnsupportedDimension("rank_one_exact_check: ambient dimension too large");
  }
  return exact_enumeration(datum, alphas, beta, budget, SearchMethod::RankOneExact);
}

PerceptivityVerdict check_perceptivity(const Datum& datum,
                                       const std::vector<double>& alphas, double beta,
                                       const SearchBudget& budget) {
  validate_query(datum, alphas, beta);
  const int d = datum.ambient_dim();
  if (d <= budget.d_max_exact) {
    const SearchMethod method = datum.all_rank_one() ? SearchMethod::RankOneExact
                                                     : SearchMethod::Enumeration;
    return exact_enumeration(datum, alphas, beta, budget, method);
  }

  // High dimension: deterministic candidates plus randomized frames. This
  // path can refute with a witness but never certifies.
  const double tau_slack = slack_tolerance(datum);
  PerceptivityVerdict verdict;
  verdict.method = SearchMethod::RandomizedSearch;
  verdict.min_slack = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(budget.seed);

  auto consider = [&](const Subspace& w) {
    if (w.dim() == 0) return false;
    ++verdict.samples_used;
    const double s = perceptivity_slack(datum, alphas, beta, w);
    if (s < verdict.min_slack) verdict.min_slack = s;
    if (s < -tau_slack) {
      verdict.status = VerdictStatus::Refuted;
      verdict.witness = w;
      return true;
    }
    return false;
  };

  for (const Subspace& w : candidate_lattice(datum, alphas, budget.lattice_cap)) {
    if (consider(w)) return verdict;
  }
  if (consider(Subspace::full(d))) return verdict;
  for (int k = 1; k < d; ++k) {
    for (int s = 0; s < budget.random_samples; ++s) {
      if (consider(Subspace::from_frame(random_frame(d, k, rng)))) return verdict;
    }
  }
  verdict.status = VerdictStatus::Unknown;
  return verdict;
}

PerceptivityVerdict projector_sufficient_check(const Datum& datum,
                                               const std::vector<double>& alphas,
                                               double beta, double c_metric,
                                               const SearchBudget& budget) {
  validate_query(datum, alphas, beta);
  if (!datum.all_orthogonal_projectors()) {
    throw InvalidInput("projector_sufficient_check: maps must be orthogonal projectors");
  }
  auto [critical, defect] = is_globally_critical(datum);
  if (!critical) {
    throw InvalidInput("projector_sufficient_check: datum is not globally critical");
  }
  if (!(c_metric > 0.0)) {
    throw InvalidInput("projector_sufficient_check: c_metric must be positive");
  }
  const int d = datum.ambient_dim();
  PerceptivityVerdict verdict;
  verdict.method = SearchMethod::SufficientCondition;
  verdict.min_slack = std::numeric_limits<double>::infinity();

  if (beta >= d) {
    // dim W - beta <= 0 for every subspace
    verdict.status = VerdictStatus::Certified;
    verdict.min_slack = beta - d;
    return verdict;
  }

  std::vector<Subspace> kernels;
  double rhs = 0.0;
  for (int j = 0; j < datum.size(); ++j) {
    Subspace image = Subspace::span(datum.map(j).matrix());
    kernels.push_back(image.complement());
    rhs += datum.weight(j) * kernels.back().dim() / static_cast<double>(d);
  }

  // worst case over a metric ball: dim(H_j^perp ∩ W') can reach m when the m
  // smallest principal angles between W and H_j^perp fit in the ball radius
  auto ball_max_intersection = [&](const Subspace& w, int j) {
    const Subspace& ker = kernels[j];
    const int cap = std::min(w.dim(), ker.dim());
    if (cap == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> dec(w.frame().transpose() * ker.frame());
    std::vector<double> angles;
    for (Eigen::Index i = 0; i < dec.singularValues().size(); ++i) {
      angles.push_back(std::acos(std::clamp(dec.singularValues()(i), -1.0, 1.0)));
    }
    std::sort(angles.begin(), angles.end());
    double cost2 = 0.0;
    int m = 0;
    const double radius = c_metric * alphas[j] + 1e-12;
    for (int i = 0; i < cap; ++i) {
      cost2 += angles[i] * angles[i];
      if (std::sqrt(cost2) <= radius) {
        m = i + 1;
      } else {
        break;
      }
    }
    return m;
  };

  bool hypothesis_holds = true;
  auto consider = [&](const Subspace& w) {
    if (w.dim() == 0) return;
    ++verdict.samples_used;
    double lhs = -beta / w.dim();
    for (int j = 0; j < datum.size(); ++j) {
      lhs += datum.weight(j) * ball_max_intersection(w, j) / static_cast<double>(w.dim());
    }
    if (lhs > rhs + 1e-9) hypothesis_holds = false;
    verdict.min_slack =
        std::min(verdict.min_slack, perceptivity_slack(datum, alphas, beta, w));
  };

  for (const Subspace& w : candidate_lattice(datum, alphas, budget.lattice_cap)) {
    consider(w);
  }
  consider(Subspace::full(d));
  std::mt19937_64 rng(budget.seed);
  for (int k = 1; k <= d; ++k) {
    for (int s = 0; s < budget.random_samples; ++s) {
      consider(Subspace::from_frame(random_frame(d, k, rng)));
    }
  }
  verdict.status = hypothesis_holds ? VerdictStatus::Certified : VerdictStatus::Unknown;
  return verdict;
}

std::pair<double, Subspace> beta_min_estimate(const Datum& datum,
                                              const SearchBudget& budget) {
  const int d = datum.ambient_dim();
  double best = 0.0;
  Subspace witness = Subspace::zero(d);
  auto consider = [&](const Subspace& w) {
    // dim W - sum_j q_j dim l_j(W), the quantity beta_min maximizes
    const double defect = -algebraic_perceptivity_defect(datum, w);
    if (defect <= 1e-12) return;
    const bool better = defect > best + 1e-12;
    const bool tied_smaller = defect > best - 1e-12 && w.dim() < witness.dim();
    if (better || tied_smaller) {
      best = defect;
      witness = w;
    }
  };
  std::vector<double> zeros(datum.size(), 0.0);
  for (const Subspace& w : candidate_lattice(datum, zeros, budget.lattice_cap)) {
    consider(w);
  }
  consider(Subspace::full(d));
  std::mt19937_64 rng(budget.seed);
  for (int k = 1; k < d; ++k) {
    for (int s = 0; s < budget.random_samples; ++s) {
      consider(Subspace::from_frame(random_frame(d, k, rng)));
    }
  }
  return {best, witness};
}

}  // namespace blb
