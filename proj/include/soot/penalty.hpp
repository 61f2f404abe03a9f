#pragma once

// Smoothed l1/l2 ratio penalty
//   phi(x) = lambda * log((l1_alpha(x) + beta) / l2_eta(x))
// with l1_alpha(x) = sum(sqrt(x_n^2 + alpha^2) - alpha) and
// l2_eta(x) = sqrt(||x||^2 + eta^2), the smooth part f = rho + phi of the
// blind deconvolution criterion (rho = 0.5 ||h * x - y||^2), its partial
// gradients and the quadratic majorant metrics used by the solver.

#include <cstddef>

#include "soot/common.hpp"

namespace soot {

struct SootParams {
  double lambda = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  double eta = 1.0;

  /// Throws ConfigError unless all four are strictly positive and finite.
  void validate() const;
};

/// Positive diagonal metric with the bounds [nu_low, nu_high] its entries are
/// guaranteed to lie in.
struct DiagMetric {
  Vec diag;
  double nu_low = 0.0;
  double nu_high = 0.0;
};

/// Floor applied to the scalar kernel metric so it is always invertible.
inline constexpr double kMetricFloor = 1e-10;

double l1_smooth(ConstSpan x, double alpha);
double l2_smooth(ConstSpan x, double eta);

double phi(ConstSpan x, const SootParams& p);
Vec grad_phi(ConstSpan x, const SootParams& p);

/// phi2(x) = -lambda * log(l2_eta(x)); the concave part of phi.
double phi2(ConstSpan x, const SootParams& p);

/// rho(x, h) = 0.5 * ||h * x - y||^2.
double data_fidelity(ConstSpan x, ConstSpan h, ConstSpan y);

/// f = rho + phi.
double smooth_objective(ConstSpan x, ConstSpan h, ConstSpan y, const SootParams& p);

/// Gradient of f in x: H^T (H x - y) + grad_phi(x).
Vec grad1_f(ConstSpan x, ConstSpan h, ConstSpan y, const SootParams& p);

/// Gradient of f in h: X^T (X h - y). phi does not depend on h.
Vec grad2_f(ConstSpan x, ConstSpan h, ConstSpan y);

/// Lipschitz constant 9 lambda / (8 eta^2) of grad phi2.
double lipschitz_phi2_bound(const SootParams& p);

/// A1(x, h) = (L1(h) + 9 lambda / (8 eta^2)) I
///            + lambda / (l1_alpha(x) + beta) * Diag((x_n^2 + alpha^2)^(-1/2)).
/// l1_h is L1(h), the squared-norm bound of the convolution by h.
DiagMetric metric_A1(ConstSpan x, double l1_h, const SootParams& p);

/// Same, computing L1(h) = op_norm_sq_bound(h, N).
DiagMetric metric_A1(ConstSpan x, ConstSpan h, const SootParams& p);

/// L2(x): squared-norm bound of h -> h * x, with h of length kernel_len.
/// Not floored; callers apply kMetricFloor.
double metric_A2(ConstSpan x, std::size_t kernel_len);

}  // namespace soot
