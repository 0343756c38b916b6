#pragma once

#include <cstdint>
#include <vector>

#include "blb/datum.hpp"

namespace blb {

/// One positive definite matrix per map, the test input of the Gaussian
/// supremum. A_j acts on the codomain of l_j.
struct GaussianInput {
  std::vector<SpdMatrix> a;
};

struct OracleOptions {
  int max_iter = 400;
  double damping = 1.0;   // initial step toward the fixed-point update
  double tol_rel = 1e-11; // relative functional change defining convergence
  std::uint64_t seed = 1;
  int restarts = 2;       // random restarts in addition to the deterministic start
};

struct OracleResult {
  double value = 0.0;
  GaussianInput argmax;
  int iterations = 0;
  bool converged = false;
  std::vector<double> functional_trace;  // non-decreasing by construction
};

/// (prod_j (det A_j)^{q_j} / det(T + sum_j q_j l_j^* A_j l_j))^{1/2},
/// a valid lower bound for the localized regularized constant for any
/// admissible input. Throws InvalidInput when some A_j exceeds R_j.
double lieb_functional(const LocalizedRegularizedDatum& lrd, const GaussianInput& a);

/// Damped fixed-point ascent on A_j^{-1} = l_j M^{-1} l_j^*, eigenvalue-clipped
/// to A_j <= R_j. Non-convergence within max_iter yields converged = false,
/// never an exception. The best restart (by value) wins.
OracleResult maximize_gaussian(const LocalizedRegularizedDatum& lrd,
                               const OracleOptions& opts = {});

struct Schedule {
  std::vector<double> t_values;        // R = t * I, increasing
  std::vector<double> epsilon_values;  // T = eps * I, decreasing

  static Schedule standard();          // t in {1..1e6}, eps in {1..1e-6}
};

struct ScheduleEntry {
  double t = 0.0;
  double epsilon = 0.0;
  double value = 0.0;
  bool converged = false;
};

struct BlLimitResult {
  double estimate = 0.0;      // raw value at the largest t, smallest eps
  double extrapolated = 0.0;  // last-two-point Richardson refinement
  std::vector<ScheduleEntry> trace;
};

/// Approximates the unregularized constant by the double limit: for each t the
/// truncation is sent to zero (eps sweep), then t grows. The trace exposes
/// monotonicity in both parameters; divergence shows up there, not as an error.
BlLimitResult bl_limit(const Datum& datum, const Schedule& schedule = Schedule::standard(),
                       const OracleOptions& opts = {});

}  // namespace blb
