#include "soot/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace soot {

BoxConstraint::BoxConstraint(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo <= hi)) throw ConfigError("BoxConstraint: lo must be <= hi");
}

bool BoxConstraint::contains(ConstSpan z, double tol) const {
  return std::all_of(z.begin(), z.end(),
                     [&](double v) { return v >= lo - tol && v <= hi + tol; });
}

KernelConstraint::KernelConstraint(double lo_, double hi_, double radius_)
    : lo(lo_), hi(hi_), radius(radius_) {
  if (!(lo <= hi)) throw ConfigError("KernelConstraint: lo must be <= hi");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("KernelConstraint: radius must be finite and > 0");
  }
  // Necessary condition in every dimension; project_box_ball re-checks with
  // the actual length.
  const double closest = std::clamp(0.0, lo, hi);
  if (std::abs(closest) > radius) {
    throw ConfigError("KernelConstraint: box and ball do not intersect");
  }
}

bool KernelConstraint::contains(ConstSpan h, double tol) const {
  const bool in_box = std::all_of(h.begin(), h.end(),
                                  [&](double v) { return v >= lo - tol && v <= hi + tol; });
  return in_box && norm2(h) <= radius + tol;
}

void clip_in_place(std::span<double> z, double lo, double hi) {
  for (auto& v : z) v = std::clamp(v, lo, hi);
}

Vec prox_box_diag_metric(ConstSpan z, const BoxConstraint& box, const DiagMetric& metric) {
  if (metric.diag.size() != z.size()) throw ConfigError("prox_box_diag_metric: metric size mismatch");
  if (std::any_of(metric.diag.begin(), metric.diag.end(), [](double d) { return !(d > 0.0); })) {
    throw PreconditionError("prox_box_diag_metric: metric entries must be > 0");
  }
  Vec out(z.begin(), z.end());
  clip_in_place(out, box.lo, box.hi);
  return out;
}

Vec project_ball(ConstSpan z, double radius) {
  Vec out(z.begin(), z.end());
  const double nz = norm2(z);
  if (nz > radius) {
    const double scale = radius / nz;
    for (auto& v : out) v *= scale;
  }
  return out;
}

namespace {

double clipped_norm(ConstSpan z, double t, double lo, double hi) {
  CompensatedSum s;
  for (double v : z) {
    const double w = std::clamp(t * v, lo, hi);
    s.add(w * w);
  }
  return std::sqrt(s.value());
}

}  // namespace

Vec project_box_ball(ConstSpan z, const KernelConstraint& c, const BoxBallOptions& opts) {
  Vec out(z.begin(), z.end());
  clip_in_place(out, c.lo, c.hi);
  if (norm2(out) <= c.radius) return out;
  if (clipped_norm(z, 0.0, c.lo, c.hi) > c.radius) {
    throw ConfigError("project_box_ball: box and ball do not intersect in this dimension");
  }

  // Invariant: ||w(t_lo)|| <= radius < ||w(t_hi)||.
  double t_lo = 0.0;
  double t_hi = 1.0;
  int it = 0;
  for (; it < opts.max_iter && t_hi - t_lo > opts.t_tol; ++it) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (mid <= t_lo || mid >= t_hi) break;
    if (clipped_norm(z, mid, c.lo, c.hi) <= c.radius) {
      t_lo = mid;
    } else {
      t_hi = mid;
    }
  }
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = std::clamp(t_lo * z[i], c.lo, c.hi);
  if (t_hi - t_lo > opts.t_tol && it >= opts.max_iter) {
    throw ProjectionError("project_box_ball: multiplier search did not converge", out, t_hi - t_lo);
  }
  return out;
}

Vec project_box_ball_dykstra(ConstSpan z, const KernelConstraint& c, const DykstraOptions& opts) {
  if (c.contains(z)) return Vec(z.begin(), z.end());

  const std::size_t n = z.size();
  // The corrections p, q carry the magnitude of z, so successive iterates
  // cannot agree to better than a few ulps of max|z|.
  double z_max = 1.0;
  for (double v : z) z_max = std::max(z_max, std::abs(v));
  const double tol = std::max(opts.tol, 64.0 * std::numeric_limits<double>::epsilon() * z_max);

  Vec x(z.begin(), z.end());
  Vec p(n, 0.0);  // box correction
  Vec q(n, 0.0);  // ball correction
  Vec y(n);
  Vec next(n);
  double residual = 0.0;
  for (int it = 0; it < opts.max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = std::clamp(x[i] + p[i], c.lo, c.hi);
      p[i] = x[i] + p[i] - y[i];
    }
    for (std::size_t i = 0; i < n; ++i) next[i] = y[i] + q[i];
    const double nn = norm2(next);
    const double scale = nn > c.radius ? c.radius / nn : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double proj = next[i] * scale;
      q[i] = y[i] + q[i] - proj;
      next[i] = proj;
    }
    residual = distance(next, x);
    // Box residual of the ball iterate; both sets must agree at the limit.
    const double gap = distance(next, y);
    x.swap(next);
    if (residual < tol && gap < tol) return x;
  }
  throw ProjectionError("project_box_ball: Dykstra did not converge", x, residual);
}

}  // namespace soot
