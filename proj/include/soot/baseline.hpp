#pragma once

// Reweighted-l1 alternating baseline: the l1/l2 ratio is convexified by
// freezing the l2 denominator at the previous outer iterate, the resulting
// l1-regularized least squares in x is run through ISTA, and the kernel takes
// one projected gradient step per outer iteration.

#include <vector>

#include "soot/common.hpp"
#include "soot/solver.hpp"

namespace soot {

struct BaselineConfig {
  double lambda_b = 1.0;
  int ista_iters = 50;
  int outer_iters = 5000;
  double stop_tol = 1e-6;  // applied as stop_tol * sqrt(N), as for SOOT
  double step_scale = 0.95;
  /// Record the convex surrogate after every ISTA iteration.
  bool record_surrogate = false;
  /// Skip the kernel update (h stays at init_h).
  bool fix_kernel = false;
  BoxBallOptions projection;

  void validate() const;
};

struct BaselineResult {
  SolveResult solve;
  /// Per outer iteration: surrogate value before and after each ISTA step.
  std::vector<Vec> surrogate;
};

/// sign(z) * max(|z| - t, 0), componentwise.
Vec soft_threshold(ConstSpan z, double t);

/// `trace_params` only feeds the F column of the trace (the SOOT criterion
/// evaluated at the baseline iterates) and does not affect the iterates.
BaselineResult baseline_solve(ConstSpan y, ConstSpan init_x, ConstSpan init_h,
                              const BaselineConfig& cfg, const BoxConstraint& g1,
                              const KernelConstraint& g2, const SootParams& trace_params);

}  // namespace soot
