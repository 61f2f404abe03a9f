#include "soot/convolution.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>

namespace soot {

namespace {

void check_lengths(std::size_t s, std::size_t n) {
  if (s == 0 || n == 0 || s > n) {
    throw ConfigError("convolution requires 1 <= S <= N (got S=" + std::to_string(s) +
                      ", N=" + std::to_string(n) + ")");
  }
}

bool go_parallel(std::size_t n, std::size_t s) { return n * s >= kParallelMinWork; }

// Deterministic start vector with no special alignment to the Fourier modes.
Vec pseudo_random_start(std::size_t dim) {
  Vec v(dim);
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  for (auto& e : v) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    e = 0.5 + static_cast<double>(state >> 11) * 0x1.0p-53;
  }
  return v;
}

double power_iteration(const std::function<void(ConstSpan, std::span<double>)>& apply_normal,
                       std::size_t dim, Vec* warm_start) {
  const PowerIterationOptions opts;
  Vec v = (warm_start != nullptr && warm_start->size() == dim) ? *warm_start
                                                              : pseudo_random_start(dim);
  double nv = norm2(v);
  if (nv == 0.0) {
    v = pseudo_random_start(dim);
    nv = norm2(v);
  }
  for (auto& e : v) e /= nv;

  Vec w(dim);
  double estimate = 0.0;
  for (int it = 0; it < opts.max_iter; ++it) {
    apply_normal(v, w);
    // Rayleigh quotient of the normal operator at a unit vector.
    const double rq = dot(v, w);
    const double nw = norm2(w);
    if (nw == 0.0) {
      estimate = 0.0;
      break;
    }
    for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / nw;
    const bool done = it > 0 && std::abs(rq - estimate) <= opts.rel_tol * std::abs(rq);
    estimate = std::max(rq, 0.0);
    if (done) break;
  }
  if (warm_start != nullptr) *warm_start = v;
  return opts.safety * estimate;
}

}  // namespace

void convolve_into(ConstSpan h, ConstSpan x, std::span<double> out) {
  if (!go_parallel(x.size(), h.size())) {
    serial::convolve_into(h, x, out);
    return;
  }
  const auto n_len = static_cast<std::ptrdiff_t>(x.size());
  const auto s_len = static_cast<std::ptrdiff_t>(h.size());
  const auto c = static_cast<std::ptrdiff_t>(center_offset(h.size()));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < n_len; ++n) {
    const std::ptrdiff_t s_lo = std::max<std::ptrdiff_t>(0, n + c - n_len + 1);
    const std::ptrdiff_t s_hi = std::min<std::ptrdiff_t>(s_len - 1, n + c);
    double acc = 0.0;
    for (std::ptrdiff_t s = s_lo; s <= s_hi; ++s) acc += h[s] * x[n - s + c];
    out[n] = acc;
  }
}

void adjoint_x_into(ConstSpan h, ConstSpan r, std::span<double> out) {
  if (!go_parallel(r.size(), h.size())) {
    serial::adjoint_x_into(h, r, out);
    return;
  }
  const auto n_len = static_cast<std::ptrdiff_t>(r.size());
  const auto s_len = static_cast<std::ptrdiff_t>(h.size());
  const auto c = static_cast<std::ptrdiff_t>(center_offset(h.size()));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < n_len; ++m) {
    const std::ptrdiff_t s_lo = std::max<std::ptrdiff_t>(0, c - m);
    const std::ptrdiff_t s_hi = std::min<std::ptrdiff_t>(s_len - 1, n_len - 1 - m + c);
    double acc = 0.0;
    for (std::ptrdiff_t s = s_lo; s <= s_hi; ++s) acc += h[s] * r[m + s - c];
    out[m] = acc;
  }
}

void adjoint_h_into(ConstSpan x, ConstSpan r, std::span<double> out) {
  if (!go_parallel(x.size(), out.size())) {
    serial::adjoint_h_into(x, r, out);
    return;
  }
  const auto n_len = static_cast<std::ptrdiff_t>(x.size());
  const auto s_len = static_cast<std::ptrdiff_t>(out.size());
  const auto c = static_cast<std::ptrdiff_t>(center_offset(out.size()));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < s_len; ++s) {
    const std::ptrdiff_t n_lo = std::max<std::ptrdiff_t>(0, s - c);
    const std::ptrdiff_t n_hi = std::min<std::ptrdiff_t>(n_len - 1, n_len - 1 + s - c);
    double acc = 0.0;
    for (std::ptrdiff_t n = n_lo; n <= n_hi; ++n) acc += x[n - s + c] * r[n];
    out[s] = acc;
  }
}

Vec convolve(ConstSpan h, ConstSpan x) {
  check_lengths(h.size(), x.size());
  Vec out(x.size());
  convolve_into(h, x, out);
  return out;
}

Vec adjoint_convolve_wrt_x(ConstSpan h, ConstSpan r) {
  check_lengths(h.size(), r.size());
  Vec out(r.size());
  adjoint_x_into(h, r, out);
  return out;
}

Vec adjoint_convolve_wrt_h(ConstSpan x, ConstSpan r, std::size_t kernel_len) {
  check_lengths(kernel_len, x.size());
  if (r.size() != x.size()) throw ConfigError("adjoint_convolve_wrt_h: r and x lengths differ");
  Vec out(kernel_len);
  adjoint_h_into(x, r, out);
  return out;
}

double op_norm_sq_bound(ConstSpan k, std::size_t out_len, Vec* warm_start) {
  if (k.empty()) throw ConfigError("op_norm_sq_bound: empty kernel");
  check_lengths(k.size(), out_len);
  if (std::all_of(k.begin(), k.end(), [](double v) { return v == 0.0; })) return 0.0;
  Vec tmp(out_len);
  auto normal = [&](ConstSpan v, std::span<double> w) {
    convolve_into(k, v, tmp);
    adjoint_x_into(k, tmp, w);
  };
  return power_iteration(normal, out_len, warm_start);
}

double kernel_op_norm_sq_bound(ConstSpan x, std::size_t kernel_len, Vec* warm_start) {
  if (x.empty()) throw ConfigError("kernel_op_norm_sq_bound: empty signal");
  check_lengths(kernel_len, x.size());
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) return 0.0;
  Vec tmp(x.size());
  auto normal = [&](ConstSpan v, std::span<double> w) {
    convolve_into(v, x, tmp);
    adjoint_h_into(x, tmp, w);
  };
  return power_iteration(normal, kernel_len, warm_start);
}

}  // namespace soot
