#include "soot/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include "soot/convolution.hpp"

namespace soot {

void SolverConfig::validate() const {
  if (inner_x < 1 || inner_h < 1) throw ConfigError("SolverConfig: inner loop counts must be >= 1");
  if (max_outer < 1) throw ConfigError("SolverConfig: max_outer must be >= 1");
  if (!(stop_tol >= 0.0)) throw ConfigError("SolverConfig: stop_tol must be >= 0");
  if (!(step_lo > 0.0) || !(step_hi > 0.0) || step_lo > 2.0 - step_hi) {
    throw ConfigError("SolverConfig: invalid step-size interval");
  }
  for (double g : {step_x, step_h}) {
    if (!(g >= step_lo && g <= 2.0 - step_hi)) {
      throw ConfigError("SolverConfig: step sizes must lie in [step_lo, 2 - step_hi]");
    }
  }
}

bool SolveTrace::nonincreasing(double tol) const {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].F > rows[i - 1].F + tol) return false;
  }
  return true;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return "converged";
    case Termination::kMaxOuter:
      return "max_outer";
    case Termination::kDescentViolation:
      return "descent_violation";
  }
  return "unknown";
}

double objective_F(ConstSpan x, ConstSpan h, ConstSpan y, const SootParams& p,
                   const BoxConstraint& g1, const KernelConstraint& g2) {
  if (!g1.contains(x) || !g2.contains(h, kKernelFeasibilityTol)) {
    return std::numeric_limits<double>::infinity();
  }
  return smooth_objective(x, h, y, p);
}

namespace {

using Clock = std::chrono::steady_clock;

void check_inputs(ConstSpan y, ConstSpan x0, ConstSpan h0, const BoxConstraint& g1,
                  const KernelConstraint& g2) {
  if (y.empty() || x0.size() != y.size()) throw ConfigError("solver: x0 and y lengths differ");
  if (h0.empty() || h0.size() > y.size()) throw ConfigError("solver: need 1 <= S <= N");
  if (!all_finite(y) || !all_finite(x0) || !all_finite(h0)) {
    throw ConfigError("solver: inputs must be finite");
  }
  if (!g1.contains(x0)) throw PreconditionError("solver: x0 is outside the signal box");
  if (!g2.contains(h0, kKernelFeasibilityTol)) {
    throw PreconditionError("solver: h0 is outside the kernel constraint set");
  }
}

}  // namespace

SolveResult soot_solve(ConstSpan y, ConstSpan init_x, ConstSpan init_h, const SootParams& p,
                       const BoxConstraint& g1, const KernelConstraint& g2,
                       const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  check_inputs(y, init_x, init_h, g1, g2);

  const std::size_t n = y.size();
  const std::size_t s = init_h.size();
  const double stop = cfg.stop_tol * std::sqrt(static_cast<double>(n));
  const double mu = lipschitz_phi2_bound(p);
  const double a2 = p.alpha * p.alpha;

  Vec x(init_x.begin(), init_x.end());
  Vec h(init_h.begin(), init_h.end());
  Vec x_prev(n), h_prev(s);
  Vec resid(n), grad_x(n), grad_h(s), h_step(s);
  Vec warm_h, warm_x;  // power-iteration warm starts

  const auto t0 = Clock::now();
  SolveResult result;
  SolveTrace& trace = result.trace;
  double f_prev = objective_F(x, h, y, p, g1, g2);
  trace.rows.push_back({0, f_prev, 0.0, 0.0, 0.0, 0.0, 0.0});
  if (cfg.record_iterates) {
    trace.x_iterates.push_back(x);
    trace.h_iterates.push_back(h);
  }

  result.termination = Termination::kMaxOuter;
  int k = 1;
  for (; k <= cfg.max_outer; ++k) {
    x_prev = x;
    h_prev = h;

    // x-block: L1(h^k) once, diagonal correction at every inner step.
    const double l1_h = op_norm_sq_bound(h, n, &warm_h);
    const double base = l1_h + mu;
    const double nu_high_x = base + p.lambda / (p.beta * p.alpha);
    for (int j = 0; j < cfg.inner_x; ++j) {
      convolve_into(h, x, resid);
      for (std::size_t i = 0; i < n; ++i) resid[i] -= y[i];
      adjoint_x_into(h, resid, grad_x);

      const double tau = l1_smooth(x, p.alpha) + p.beta;
      const double l2sq = squared_norm(x) + p.eta * p.eta;
      const double weight = p.lambda / tau;
      if (cfg.metric_mode == MetricMode::kVariable) {
        for (std::size_t i = 0; i < n; ++i) {
          const double r = std::sqrt(x[i] * x[i] + a2);
          const double g = grad_x[i] + weight * x[i] / r - p.lambda * x[i] / l2sq;
          const double d = base + weight / r;
          x[i] = std::clamp(x[i] - cfg.step_x * g / d, g1.lo, g1.hi);
        }
      } else {
        const double inv = cfg.step_x / nu_high_x;
        for (std::size_t i = 0; i < n; ++i) {
          const double r = std::sqrt(x[i] * x[i] + a2);
          const double g = grad_x[i] + weight * x[i] / r - p.lambda * x[i] / l2sq;
          x[i] = std::clamp(x[i] - inv * g, g1.lo, g1.hi);
        }
      }
    }

    // h-block with the scalar metric L2(x^{k+1}).
    const double l2_x = std::max(kernel_op_norm_sq_bound(x, s, &warm_x), kMetricFloor);
    for (int i = 0; i < cfg.inner_h; ++i) {
      convolve_into(h, x, resid);
      for (std::size_t m = 0; m < n; ++m) resid[m] -= y[m];
      adjoint_h_into(x, resid, grad_h);
      const double inv = cfg.step_h / l2_x;
      for (std::size_t m = 0; m < s; ++m) h_step[m] = h[m] - inv * grad_h[m];
      h = project_box_ball(h_step, g2, cfg.projection);
    }

    TraceRow row;
    row.k = k;
    row.F = objective_F(x, h, y, p, g1, g2);
    row.x_delta = distance(x, x_prev);
    row.h_delta = distance(h, h_prev);
    row.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
    row.nu_low = std::min(mu, l2_x);
    row.nu_high = std::max(nu_high_x, l2_x);
    trace.rows.push_back(row);
    if (cfg.record_iterates) {
      trace.x_iterates.push_back(x);
      trace.h_iterates.push_back(h);
    }

    if (cfg.check_descent && !(row.F <= f_prev + cfg.descent_tol)) {
      result.termination = Termination::kDescentViolation;
      break;
    }
    f_prev = row.F;
    if (row.x_delta <= stop) {
      result.termination = Termination::kConverged;
      break;
    }
  }

  result.outer_iterations = static_cast<int>(trace.rows.size()) - 1;
  result.x_hat = Signal(std::move(x));
  result.h_hat = Kernel(std::move(h));
  return result;
}

void write_trace_csv(std::ostream& out, const SolveTrace& trace) {
  const auto old_precision = out.precision(17);
  out << "k,F,x_delta,h_delta,wall_time_s,nu_low,nu_high\n";
  for (const auto& r : trace.rows) {
    out << r.k << ',' << r.F << ',' << r.x_delta << ',' << r.h_delta << ',' << r.wall_time_s << ','
        << r.nu_low << ',' << r.nu_high << '\n';
  }
  out.precision(old_precision);
}

}  // namespace soot
