#include "soot/penalty.hpp"

#include <algorithm>
#include <cmath>

#include "soot/convolution.hpp"

namespace soot {

void SootParams::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(lambda) || !ok(alpha) || !ok(beta) || !ok(eta)) {
    throw ConfigError("SootParams: lambda, alpha, beta and eta must be finite and > 0");
  }
}

double l1_smooth(ConstSpan x, double alpha) {
  CompensatedSum s;
  for (double v : x) {
    // sqrt(v^2 + a^2) - a, written to avoid cancellation for |v| << a.
    const double r = std::sqrt(v * v + alpha * alpha);
    s.add(v * v / (r + alpha == 0.0 ? 1.0 : r + alpha));
  }
  return s.value();
}

double l2_smooth(ConstSpan x, double eta) { return std::sqrt(squared_norm(x) + eta * eta); }

double phi(ConstSpan x, const SootParams& p) {
  return p.lambda * std::log((l1_smooth(x, p.alpha) + p.beta) / l2_smooth(x, p.eta));
}

double phi2(ConstSpan x, const SootParams& p) { return -p.lambda * std::log(l2_smooth(x, p.eta)); }

Vec grad_phi(ConstSpan x, const SootParams& p) {
  const double tau = l1_smooth(x, p.alpha) + p.beta;
  const double l2sq = squared_norm(x) + p.eta * p.eta;
  Vec g(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    g[n] = p.lambda * (x[n] / (std::sqrt(x[n] * x[n] + p.alpha * p.alpha) * tau) - x[n] / l2sq);
  }
  return g;
}

double data_fidelity(ConstSpan x, ConstSpan h, ConstSpan y) {
  Vec r = convolve(h, x);
  for (std::size_t n = 0; n < r.size(); ++n) r[n] -= y[n];
  return 0.5 * squared_norm(r);
}

double smooth_objective(ConstSpan x, ConstSpan h, ConstSpan y, const SootParams& p) {
  return data_fidelity(x, h, y) + phi(x, p);
}

Vec grad1_f(ConstSpan x, ConstSpan h, ConstSpan y, const SootParams& p) {
  if (y.size() != x.size()) throw ConfigError("grad1_f: x and y lengths differ");
  Vec r = convolve(h, x);
  for (std::size_t n = 0; n < r.size(); ++n) r[n] -= y[n];
  Vec g = adjoint_convolve_wrt_x(h, r);
  const Vec gp = grad_phi(x, p);
  for (std::size_t n = 0; n < g.size(); ++n) g[n] += gp[n];
  return g;
}

Vec grad2_f(ConstSpan x, ConstSpan h, ConstSpan y) {
  if (y.size() != x.size()) throw ConfigError("grad2_f: x and y lengths differ");
  Vec r = convolve(h, x);
  for (std::size_t n = 0; n < r.size(); ++n) r[n] -= y[n];
  return adjoint_convolve_wrt_h(x, r, h.size());
}

double lipschitz_phi2_bound(const SootParams& p) { return 9.0 * p.lambda / (8.0 * p.eta * p.eta); }

DiagMetric metric_A1(ConstSpan x, double l1_h, const SootParams& p) {
  const double base = l1_h + lipschitz_phi2_bound(p);
  const double weight = p.lambda / (l1_smooth(x, p.alpha) + p.beta);
  DiagMetric m;
  m.diag.resize(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) m.diag[n] = base + weight / std::sqrt(x[n] * x[n] + p.alpha * p.alpha);
  m.nu_low = lipschitz_phi2_bound(p);
  m.nu_high = base + p.lambda / (p.beta * p.alpha);
  return m;
}

DiagMetric metric_A1(ConstSpan x, ConstSpan h, const SootParams& p) {
  return metric_A1(x, op_norm_sq_bound(h, x.size()), p);
}

double metric_A2(ConstSpan x, std::size_t kernel_len) {
  return kernel_op_norm_sq_bound(x, kernel_len);
}

}  // namespace soot
