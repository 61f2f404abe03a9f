#pragma once

// Proximity operators of the two constraint indicators: the signal box
// [lo, hi]^N and the kernel set {h in [lo, hi]^S : ||h|| <= radius}.

#include <string>

#include "soot/common.hpp"
#include "soot/penalty.hpp"

namespace soot {

struct BoxConstraint {
  double lo = -1.0;
  double hi = 1.0;

  BoxConstraint() = default;
  BoxConstraint(double lo_, double hi_);

  bool contains(ConstSpan z, double tol = 0.0) const;
};

struct KernelConstraint {
  double lo = -1.0;
  double hi = 1.0;
  double radius = 1.0;

  KernelConstraint() = default;
  /// Throws ConfigError if lo > hi, radius <= 0, or the set is empty.
  KernelConstraint(double lo_, double hi_, double radius_);

  bool contains(ConstSpan h, double tol = 0.0) const;
};

/// An iterative projection stopped after max_iter sweeps without meeting
/// its tolerance.
class ProjectionError : public std::runtime_error {
 public:
  ProjectionError(const std::string& what, Vec last_iterate, double residual)
      : std::runtime_error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

  const Vec& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  Vec last_iterate_;
  double residual_;
};

struct DykstraOptions {
  double tol = 1e-10;
  int max_iter = 10000;
};

/// Multiplier search of project_box_ball: bisection on t in [0, 1] until the
/// bracket is below t_tol or max_iter halvings.
struct BoxBallOptions {
  double t_tol = 1e-15;
  int max_iter = 200;
};

/// prox of the box indicator in the metric U = Diag(metric.diag). The box
/// is separable, so for any positive diagonal metric this is the clip.
Vec prox_box_diag_metric(ConstSpan z, const BoxConstraint& box, const DiagMetric& metric);

/// Unweighted clip to the box, in place.
void clip_in_place(std::span<double> z, double lo, double hi);

Vec project_ball(ConstSpan z, double radius);

/// Euclidean projection onto box ∩ ball. The minimizer has the form
/// w(t) = clip(t z, lo, hi) with t = 1 / (1 + mu), mu the multiplier of the
/// ball constraint; ||w(t)|| is nondecreasing in t, so t is found by
/// bisection. The result is feasible: the bracket end with ||w|| <= radius
/// is returned.
Vec project_box_ball(ConstSpan z, const KernelConstraint& c, const BoxBallOptions& opts = {});

/// Same projection by Dykstra's alternating projections between the box and
/// the ball. Slow (linear rate) when both sets are active; kept as an
/// independent reference. Throws ProjectionError on non-convergence.
Vec project_box_ball_dykstra(ConstSpan z, const KernelConstraint& c,
                             const DykstraOptions& opts = {});

}  // namespace soot
