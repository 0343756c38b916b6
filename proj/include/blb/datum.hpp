#pragma once

#include <vector>

#include "blb/linalg.hpp"

namespace blb {

/// Brascamp-Lieb datum D = ((l_j), (q_j)) with shared source dimension d.
/// codomain_dims holds dim H_j for entropy/acuity purposes; it defaults to the
/// row count of each map, except for square orthogonal projectors, whose
/// codomain is their image (dim H_j = rank).
class Datum {
public:
  Datum(int ambient_dim, std::vector<LinearMap> maps, std::vector<double> weights);
  Datum(int ambient_dim, std::vector<LinearMap> maps, std::vector<double> weights,
        std::vector<int> codomain_dims);

  int ambient_dim() const { return d_; }
  int size() const { return static_cast<int>(maps_.size()); }
  const std::vector<LinearMap>& maps() const { return maps_; }
  const LinearMap& map(int j) const { return maps_.at(j); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(int j) const { return weights_.at(j); }
  int codomain_dim(int j) const { return codomain_dims_.at(j); }
  const std::vector<int>& codomain_dims() const { return codomain_dims_; }

  double weight_sum() const;
  bool all_orthogonal_projectors(double tau = 1e-8) const;
  bool all_rank_one() const;

private:
  void validate() const;
  int d_;
  std::vector<LinearMap> maps_;
  std::vector<double> weights_;
  std::vector<int> codomain_dims_;
};

/// (D, R, T): SPD regularisers R_j on each H_j and an SPD localiser T on H.
struct LocalizedRegularizedDatum {
  Datum datum;
  std::vector<SpdMatrix> regs;
  SpdMatrix loc;

  LocalizedRegularizedDatum(Datum d, std::vector<SpdMatrix> r, SpdMatrix t);
};

/// (flag, defect) with defect = sum_j q_j dim H_j - d.
std::pair<bool, double> is_globally_critical(const Datum& datum);

/// A_alpha(D | W) = sum_j q_j rk_{alpha_j}(l_j | W).
double essential_acuity(const Datum& datum, const std::vector<double>& alphas,
                        const Subspace& w);

/// A(D) = sum_j q_j dim H_j.
double total_acuity(const Datum& datum);

/// E(D) = prod_j q_j^{-q_j dim H_j / 2}.
double exponential_entropy(const Datum& datum);

/// Replace each surjective l_j by the orthogonal projector with the same
/// kernel; returns the projector datum and the distortion
/// Upsilon(D) = prod_j (prod of nonzero singular values of l_j)^{-q_j}.
std::pair<Datum, double> projector_reduction(const Datum& datum);

/// Operator norm of T + sum_j q_j l_j^* R_j l_j.
double gram_norm(const LocalizedRegularizedDatum& lrd);

/// sum_j q_j dim l_j(W) - dim W (non-negative on perceptive data).
double algebraic_perceptivity_defect(const Datum& datum, const Subspace& w);

}  // namespace blb
