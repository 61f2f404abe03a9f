#pragma once

// Zero-padded "same" linear convolution y = h * x with
//   y[n] = sum_s h[s] * x[n - s + c],  c = floor(S / 2),
// and the two adjoints needed for the partial gradients of the data term.
//
// Every kernel exists twice: soot::serial holds the plain reference loops,
// soot:: holds the OpenMP versions used by the solvers. Both accumulate each
// output sample in the same order, so they agree bit for bit.

#include <cstddef>
#include <span>

#include "soot/common.hpp"

namespace soot {

/// Center offset of a kernel of length s.
constexpr std::size_t center_offset(std::size_t s) { return s / 2; }

/// Work (N * S) below which the OpenMP kernels stay on one thread.
inline constexpr std::size_t kParallelMinWork = std::size_t{1} << 15;

namespace serial {

void convolve_into(ConstSpan h, ConstSpan x, std::span<double> out);
void adjoint_x_into(ConstSpan h, ConstSpan r, std::span<double> out);
void adjoint_h_into(ConstSpan x, ConstSpan r, std::span<double> out);

Vec convolve(ConstSpan h, ConstSpan x);
Vec adjoint_convolve_wrt_x(ConstSpan h, ConstSpan r);
Vec adjoint_convolve_wrt_h(ConstSpan x, ConstSpan r, std::size_t kernel_len);

}  // namespace serial

void convolve_into(ConstSpan h, ConstSpan x, std::span<double> out);
void adjoint_x_into(ConstSpan h, ConstSpan r, std::span<double> out);
void adjoint_h_into(ConstSpan x, ConstSpan r, std::span<double> out);

/// h * x, length x.size(). Throws ConfigError unless 1 <= S <= N.
Vec convolve(ConstSpan h, ConstSpan x);

/// H^T r where H is the matrix of x -> convolve(h, x).
Vec adjoint_convolve_wrt_x(ConstSpan h, ConstSpan r);

/// X^T r where X is the matrix of h -> convolve(h, x), h of length kernel_len.
Vec adjoint_convolve_wrt_h(ConstSpan x, ConstSpan r, std::size_t kernel_len);

/// Upper bound on ||H||^2 for H the out_len x out_len matrix of
/// v -> convolve(k, v): power iteration on H^T H (relative tolerance 1e-6,
/// at most 500 iterations) times a 1.01 safety factor. Zero for k == 0.
///
/// When warm_start is non-null and has length out_len it seeds the
/// iteration, and on return holds the final iterate.
double op_norm_sq_bound(ConstSpan k, std::size_t out_len, Vec* warm_start = nullptr);

/// Same bound for X, the out_len x kernel_len matrix of h -> convolve(h, x).
/// This is the Lipschitz constant of the kernel gradient of the data term.
double kernel_op_norm_sq_bound(ConstSpan x, std::size_t kernel_len,
                               Vec* warm_start = nullptr);

struct PowerIterationOptions {
  double rel_tol = 1e-6;
  int max_iter = 500;
  double safety = 1.01;
};

}  // namespace soot
