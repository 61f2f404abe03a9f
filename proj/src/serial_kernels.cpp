#include <algorithm>
#include <string>

#include "soot/convolution.hpp"

namespace soot::serial {

void convolve_into(ConstSpan h, ConstSpan x, std::span<double> out) {
  const auto n_len = static_cast<std::ptrdiff_t>(x.size());
  const auto s_len = static_cast<std::ptrdiff_t>(h.size());
  const auto c = static_cast<std::ptrdiff_t>(center_offset(h.size()));
  for (std::ptrdiff_t n = 0; n < n_len; ++n) {
    // x index m = n - s + c must lie in [0, N).
    const std::ptrdiff_t s_lo = std::max<std::ptrdiff_t>(0, n + c - n_len + 1);
    const std::ptrdiff_t s_hi = std::min<std::ptrdiff_t>(s_len - 1, n + c);
    double acc = 0.0;
    for (std::ptrdiff_t s = s_lo; s <= s_hi; ++s) acc += h[s] * x[n - s + c];
    out[n] = acc;
  }
}

void adjoint_x_into(ConstSpan h, ConstSpan r, std::span<double> out) {
  const auto n_len = static_cast<std::ptrdiff_t>(r.size());
  const auto s_len = static_cast<std::ptrdiff_t>(h.size());
  const auto c = static_cast<std::ptrdiff_t>(center_offset(h.size()));
  for (std::ptrdiff_t m = 0; m < n_len; ++m) {
    // r index n = m + s - c must lie in [0, N).
    const std::ptrdiff_t s_lo = std::max<std::ptrdiff_t>(0, c - m);
    const std::ptrdiff_t s_hi = std::min<std::ptrdiff_t>(s_len - 1, n_len - 1 - m + c);
    double acc = 0.0;
    for (std::ptrdiff_t s = s_lo; s <= s_hi; ++s) acc += h[s] * r[m + s - c];
    out[m] = acc;
  }
}

void adjoint_h_into(ConstSpan x, ConstSpan r, std::span<double> out) {
  const auto n_len = static_cast<std::ptrdiff_t>(x.size());
  const auto s_len = static_cast<std::ptrdiff_t>(out.size());
  const auto c = static_cast<std::ptrdiff_t>(center_offset(out.size()));
  for (std::ptrdiff_t s = 0; s < s_len; ++s) {
    // x index n - s + c must lie in [0, N).
    const std::ptrdiff_t n_lo = std::max<std::ptrdiff_t>(0, s - c);
    const std::ptrdiff_t n_hi = std::min<std::ptrdiff_t>(n_len - 1, n_len - 1 + s - c);
    double acc = 0.0;
    for (std::ptrdiff_t n = n_lo; n <= n_hi; ++n) acc += x[n - s + c] * r[n];
    out[s] = acc;
  }
}

namespace {

void check_lengths(std::size_t s, std::size_t n) {
  if (s == 0 || n == 0 || s > n) {
    throw ConfigError("convolution requires 1 <= S <= N (got S=" + std::to_string(s) +
                      ", N=" + std::to_string(n) + ")");
  }
}

}  // namespace

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

}  // namespace soot::serial
