#pragma once

// Synthetic seismic traces: sparse reflectivity, Ricker source wavelet and
// additive white Gaussian noise, plus the shared initialization strategy.

#include <cstdint>
#include <utility>

#include "soot/common.hpp"
#include "soot/prox.hpp"
#include "soot/signal.hpp"

namespace soot::bench {

/// r(t) = (1 - 2 pi^2 f^2 t^2) exp(-pi^2 f^2 t^2) sampled at
/// t = (i - floor(s/2)) * dt, i = 0..s-1.
Kernel ricker_wavelet(std::size_t s, double peak_hz, double dt);

/// Each sample is a spike with probability spike_prob; spike amplitudes are
/// uniform on [x_min, -0.1 m] U [0.1 m, x_max], m = max(|x_min|, |x_max|).
Signal gen_reflectivity(std::size_t n, double spike_prob, std::pair<double, double> amp_range,
                        std::uint64_t seed);

/// convolve(h, x) + N(0, sigma^2) white noise.
Signal gen_observation(ConstSpan x, ConstSpan h, double sigma, std::uint64_t seed);

/// Kernel set read from the true wavelet: [min h, max h]^S with radius
/// radius_factor * ||h||.
KernelConstraint kernel_constraint_from_truth(ConstSpan h_true, double radius_factor);

/// x0 = c * ones with c = max(|x_min|, |x_max|) / sqrt(N); h0 a centered
/// Gaussian of standard deviation S/8 projected onto `c`.
std::pair<Signal, Kernel> init_strategy(std::size_t n, std::size_t s,
                                        std::pair<double, double> amp_range,
                                        const KernelConstraint& c);

std::uint64_t splitmix64(std::uint64_t v);

/// Noise seed of realization `index` at noise level `sigma_index`.
std::uint64_t realization_seed(std::uint64_t master, std::size_t sigma_index, std::size_t index);

}  // namespace soot::bench
