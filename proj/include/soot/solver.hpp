#pragma once

// Block-alternating variable-metric forward-backward solver for
//   min_{x, h}  F(x, h) = 0.5 ||h * x - y||^2 + phi(x) + i_box(x) + i_C(h).
//
// Each outer iteration runs `inner_x` preconditioned gradient + prox steps on
// x with h fixed (metric A1), then `inner_h` steps on h with x fixed (scalar
// metric A2 = L2(x) I).

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "soot/common.hpp"
#include "soot/penalty.hpp"
#include "soot/prox.hpp"
#include "soot/signal.hpp"

namespace soot {

enum class MetricMode {
  /// Diagonal MM metric A1(x, h), recomputed at every inner x-step.
  kVariable,
  /// Scalar Lipschitz majorant (L1(h) + 9 lambda/(8 eta^2) + lambda/(beta alpha)) I,
  /// evaluated once per outer iteration (PALM when inner_x = inner_h = 1).
  kScalarLipschitz,
};

struct SolverConfig {
  int inner_x = 71;
  int inner_h = 1;
  double step_x = 1.0;
  double step_h = 1.0;
  double stop_tol = 1e-6;  // applied as stop_tol * sqrt(N)
  int max_outer = 5000;
  bool check_descent = true;
  double descent_tol = 1e-9;
  double step_lo = 0.01;  // steps must lie in [step_lo, 2 - step_hi]
  double step_hi = 0.01;
  MetricMode metric_mode = MetricMode::kVariable;
  bool record_iterates = false;
  BoxBallOptions projection;

  void validate() const;
};

struct TraceRow {
  int k = 0;
  double F = 0.0;
  double x_delta = 0.0;
  double h_delta = 0.0;
  double wall_time_s = 0.0;
  double nu_low = 0.0;
  double nu_high = 0.0;
};

/// Row k = 0 holds the initial point; rows 1.. the outer iterations.
struct SolveTrace {
  std::vector<TraceRow> rows;
  /// (x^k, h^k) for every row, when SolverConfig::record_iterates is set.
  std::vector<Vec> x_iterates;
  std::vector<Vec> h_iterates;

  bool nonincreasing(double tol) const;
};

enum class Termination { kConverged, kMaxOuter, kDescentViolation };

std::string to_string(Termination t);

struct SolveResult {
  Signal x_hat;
  Kernel h_hat;
  SolveTrace trace;
  Termination termination = Termination::kMaxOuter;
  int outer_iterations = 0;
};

/// Kernel iterates are accepted as feasible within this slack, which covers
/// the Dykstra tolerance.
inline constexpr double kKernelFeasibilityTol = 1e-8;

/// F(x, h), +infinity when (x, h) is outside box x C.
double objective_F(ConstSpan x, ConstSpan h, ConstSpan y, const SootParams& p,
                   const BoxConstraint& g1, const KernelConstraint& g2);

SolveResult soot_solve(ConstSpan y, ConstSpan init_x, ConstSpan init_h, const SootParams& p,
                       const BoxConstraint& g1, const KernelConstraint& g2,
                       const SolverConfig& cfg);

/// CSV with header k,F,x_delta,h_delta,wall_time_s,nu_low,nu_high.
void write_trace_csv(std::ostream& out, const SolveTrace& trace);

}  // namespace soot
