#include "soot/baseline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "soot/convolution.hpp"

namespace soot {

void BaselineConfig::validate() const {
  if (!(lambda_b >= 0.0) || ista_iters < 1 || outer_iters < 1 || !(stop_tol > 0.0)) {
    throw ConfigError("BaselineConfig: lambda_b must be >= 0, the rest positive");
  }
  if (!(step_scale > 0.0 && step_scale <= 1.0)) {
    throw ConfigError("BaselineConfig: step_scale must lie in (0, 1]");
  }
}

Vec soft_threshold(ConstSpan z, double t) {
  Vec out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double m = std::abs(z[i]) - t;
    out[i] = m > 0.0 ? std::copysign(m, z[i]) : 0.0;
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double surrogate_value(ConstSpan x, ConstSpan h, ConstSpan y, double weight, Vec& resid) {
  convolve_into(h, x, resid);
  CompensatedSum s;
  for (std::size_t i = 0; i < resid.size(); ++i) {
    const double d = resid[i] - y[i];
    s.add(d * d);
  }
  return 0.5 * s.value() + weight * norm1(x);
}

}  // namespace

BaselineResult baseline_solve(ConstSpan y, ConstSpan init_x, ConstSpan init_h,
                              const BaselineConfig& cfg, const BoxConstraint& g1,
                              const KernelConstraint& g2, const SootParams& trace_params) {
  cfg.validate();
  trace_params.validate();
  if (y.empty() || init_x.size() != y.size()) throw ConfigError("baseline: x0 and y lengths differ");
  if (init_h.empty() || init_h.size() > y.size()) throw ConfigError("baseline: need 1 <= S <= N");
  if (!g1.contains(init_x)) throw PreconditionError("baseline: x0 is outside the signal box");
  if (!g2.contains(init_h, kKernelFeasibilityTol)) {
    throw PreconditionError("baseline: h0 is outside the kernel constraint set");
  }

  const std::size_t n = y.size();
  const std::size_t s = init_h.size();
  const double stop = cfg.stop_tol * std::sqrt(static_cast<double>(n));

  Vec x(init_x.begin(), init_x.end());
  Vec h(init_h.begin(), init_h.end());
  Vec x_prev(n), h_prev(s), resid(n), grad_x(n), grad_h(s), h_step(s);
  Vec warm_h, warm_x;

  BaselineResult out;
  SolveResult& result = out.solve;
  const auto t0 = Clock::now();
  result.trace.rows.push_back({0, objective_F(x, h, y, trace_params, g1, g2), 0.0, 0.0, 0.0, 0.0, 0.0});
  result.termination = Termination::kMaxOuter;

  for (int k = 1; k <= cfg.outer_iters; ++k) {
    x_prev = x;
    h_prev = h;

    // x-phase: ISTA on 0.5||Hx - y||^2 + (lambda_b / ||x_prev||) ||x||_1.
    const double weight = cfg.lambda_b / std::max(norm2(x_prev), 1e-10);
    const double l1_h = std::max(op_norm_sq_bound(h, n, &warm_h), kMetricFloor);
    const double step = cfg.step_scale / l1_h;
    Vec surrogate;
    if (cfg.record_surrogate) surrogate.push_back(surrogate_value(x, h, y, weight, resid));
    for (int it = 0; it < cfg.ista_iters; ++it) {
      convolve_into(h, x, resid);
      for (std::size_t i = 0; i < n; ++i) resid[i] -= y[i];
      adjoint_x_into(h, resid, grad_x);
      const double thresh = step * weight;
      for (std::size_t i = 0; i < n; ++i) {
        const double z = x[i] - step * grad_x[i];
        const double m = std::abs(z) - thresh;
        // Clip after threshold; exact prox of l1 + box whenever lo <= 0 <= hi.
        x[i] = std::clamp(m > 0.0 ? std::copysign(m, z) : 0.0, g1.lo, g1.hi);
      }
      if (cfg.record_surrogate) surrogate.push_back(surrogate_value(x, h, y, weight, resid));
    }
    if (cfg.record_surrogate) out.surrogate.push_back(std::move(surrogate));

    // h-phase: one projected gradient step.
    double l2_x = l1_h;
    if (!cfg.fix_kernel) {
      l2_x = std::max(kernel_op_norm_sq_bound(x, s, &warm_x), kMetricFloor);
      convolve_into(h, x, resid);
      for (std::size_t i = 0; i < n; ++i) resid[i] -= y[i];
      adjoint_h_into(x, resid, grad_h);
      const double step_h = cfg.step_scale / l2_x;
      for (std::size_t i = 0; i < s; ++i) h_step[i] = h[i] - step_h * grad_h[i];
      h = project_box_ball(h_step, g2, cfg.projection);
    }

    TraceRow row;
    row.k = k;
    row.F = objective_F(x, h, y, trace_params, g1, g2);
    row.x_delta = distance(x, x_prev);
    row.h_delta = distance(h, h_prev);
    row.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
    row.nu_low = std::min(l1_h, l2_x);
    row.nu_high = std::max(l1_h, l2_x);
    result.trace.rows.push_back(row);
    if (row.x_delta <= stop) {
      result.termination = Termination::kConverged;
      break;
    }
  }

  result.outer_iterations = static_cast<int>(result.trace.rows.size()) - 1;
  result.x_hat = Signal(std::move(x));
  result.h_hat = Kernel(std::move(h));
  return out;
}

}  // namespace soot
