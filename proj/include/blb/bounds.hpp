#pragma once

#include <string>
#include <vector>

#include "blb/datum.hpp"
#include "blb/perceptivity.hpp"

namespace blb {

enum class BoundKind {
  UpperGlobal,
  UpperVariant,
  LowerGlobal,
  UpperLocalized,
  LowerLocalized,
};

const char* to_string(BoundKind k);

struct Hypothesis {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// A bound value together with the hypotheses it rests on. Upper bounds with
/// a failed hypothesis report +infinity (finite = false), never a float
/// overflow; a finite value certifies that every hypothesis passed.
struct BoundReport {
  BoundKind kind = BoundKind::UpperGlobal;
  double value = 0.0;
  bool finite = true;
  std::vector<Hypothesis> hypotheses;
  std::vector<std::pair<std::string, std::string>> inputs_echo;

  bool all_hypotheses_pass() const;
};

/// BL(D) <= d^{d/2} E(D) prod_j alpha_j^{-q_j dim H_j} under global
/// criticality and alpha-perceptivity. An Unknown perceptivity verdict is
/// accepted only with force_unknown, and is recorded in the report.
BoundReport upper_bound_global(const Datum& datum, const std::vector<double>& alphas,
                               const PerceptivityVerdict& perceptivity,
                               bool force_unknown = false);

/// Projector variant: BL(D) <= d^{d/2} E(D) Upsilon(D) prod alpha^{-q dim H},
/// gated on criticality and perceptivity of the projector reduction.
BoundReport upper_bound_variant(const Datum& datum, const std::vector<double>& alphas,
                                const PerceptivityVerdict& proj_perceptivity,
                                bool force_unknown = false);

/// BL(D) >= (C^2 sum q)^{-d/2} alpha^{sum q rk_alpha(l|W) - dim W} with
/// C = 1 + max_j ||l_j||; no hypotheses.
BoundReport lower_bound_global(const Datum& datum, double alpha, const Subspace& w);

/// Localized upper bound with the N(D,R,T) and ||T^{-1}|| factors.
BoundReport upper_bound_localized(const LocalizedRegularizedDatum& lrd,
                                  const std::vector<double>& alphas, double beta,
                                  const PerceptivityVerdict& perceptivity,
                                  bool force_unknown = false);

/// Lower bound for R = identities, T = t * id.
BoundReport lower_bound_localized(const Datum& datum, double t, double alpha,
                                  const Subspace& w);

/// Index sets from the inductive construction on the eigenbasis of M.
struct GreedyCertificate {
  Eigen::MatrixXd basis;       // columns e_1..e_d, eigenvectors of M
  Eigen::VectorXd eigenvalues; // descending, positive
  std::vector<std::vector<int>> index_sets;  // per map, 1-based indices
};

GreedyCertificate greedy_index_sets(const Datum& datum, const SpdMatrix& m);

/// Re-verify the construction invariants numerically: the inclusion rule,
/// its complement, and the wedge bound |∧ l_j e_i| >= d^{-|I_j|/2}.
bool verify_greedy_certificate(const Datum& datum, const GreedyCertificate& cert,
                               double tau = 1e-9);

}  // namespace blb
