#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "blb/datum.hpp"

namespace blb {

enum class VerdictStatus { Certified, Refuted, Unknown };
enum class SearchMethod {
  Enumeration,
  RankOneExact,
  SufficientCondition,
  RandomizedSearch,
};

const char* to_string(VerdictStatus s);
const char* to_string(SearchMethod m);

struct PerceptivityVerdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::optional<Subspace> witness;  // violating W when Refuted
  double min_slack = 0.0;           // smallest observed A_alpha(D|W) - dim W + beta
  SearchMethod method = SearchMethod::RandomizedSearch;
  long samples_used = 0;
};

struct SearchBudget {
  int restarts = 32;        // random multi-starts per feasibility subproblem
  int descent_steps = 200;  // iterations per start
  int random_samples = 512; // random subspaces per dimension (inexact path)
  int lattice_cap = 160;    // cap on deterministic candidate subspaces
  int d_max_exact = 4;      // exact enumeration available up to this dim
  std::uint64_t seed = 7;
};

inline double slack_tolerance(const Datum& datum) {
  return 1e-9 * (1.0 + datum.weight_sum());
}

/// A_alpha(D|W) - dim W + beta, computed exactly at W.
double perceptivity_slack(const Datum& datum, const std::vector<double>& alphas,
                          double beta, const Subspace& w);

/// Decide (alpha, beta)-perceptivity. Certified only through exact methods
/// (rank-one / pattern enumeration in low dimension); randomized search alone
/// reports Unknown with the smallest slack it saw.
PerceptivityVerdict check_perceptivity(const Datum& datum,
                                       const std::vector<double>& alphas, double beta,
                                       const SearchBudget& budget = {});

/// Exact decision for data of rank-one maps, by exhausting activation
/// patterns per dimension. Throws InvalidInput for maps of rank != 1 and
/// UnsupportedDimension above budget.d_max_exact.
PerceptivityVerdict rank_one_exact_check(const Datum& datum,
                                         const std::vector<double>& alphas, double beta,
                                         const SearchBudget& budget = {});

/// Sufficient condition for globally critical orthogonal-projector data,
/// comparing kernel-intersection proportions over metric balls of radius
/// c_metric * alpha_j. The constant is caller-supplied; with the default 1
/// the check is sufficient only relative to that choice.
PerceptivityVerdict projector_sufficient_check(const Datum& datum,
                                               const std::vector<double>& alphas,
                                               double beta, double c_metric = 1.0,
                                               const SearchBudget& budget = {});

/// Largest value of dim W - A_0(D|W) found over the kernel lattice and a
/// randomized search, with the maximizing subspace. A lower bound on
/// beta_min in general; exact when the lattice is exhaustive.
std::pair<double, Subspace> beta_min_estimate(const Datum& datum,
                                              const SearchBudget& budget = {});

/// Deterministic candidate subspaces: kernels, near-dead singular subspaces
/// at the alpha thresholds, closed under intersection/sum/complement (capped).
std::vector<Subspace> candidate_lattice(const Datum& datum,
                                        const std::vector<double>& alphas,
                                        int cap = 160);

}  // namespace blb
