#include "soot/bench/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "soot/convolution.hpp"

namespace soot::bench {

Kernel ricker_wavelet(std::size_t s, double peak_hz, double dt) {
  if (s == 0) throw ConfigError("ricker_wavelet: s must be >= 1");
  if (!(peak_hz > 0.0) || !(dt > 0.0)) throw ConfigError("ricker_wavelet: peak_hz and dt must be > 0");
  const auto c = static_cast<double>(center_offset(s));
  const double pf = std::numbers::pi * peak_hz;
  Vec r(s);
  for (std::size_t i = 0; i < s; ++i) {
    const double t = (static_cast<double>(i) - c) * dt;
    const double u = pf * pf * t * t;
    r[i] = (1.0 - 2.0 * u) * std::exp(-u);
  }
  return Kernel(std::move(r));
}

Signal gen_reflectivity(std::size_t n, double spike_prob, std::pair<double, double> amp_range,
                        std::uint64_t seed) {
  const auto [x_min, x_max] = amp_range;
  if (n == 0) throw ConfigError("gen_reflectivity: n must be >= 1");
  if (!(spike_prob > 0.0 && spike_prob < 1.0)) throw ConfigError("gen_reflectivity: need 0 < p < 1");
  const double m = std::max(std::abs(x_min), std::abs(x_max));
  const double floor = 0.1 * m;
  // Negative and positive amplitude intervals, possibly empty.
  const double neg_len = std::max(0.0, -floor - x_min);
  const double pos_len = std::max(0.0, x_max - floor);
  if (neg_len + pos_len <= 0.0) throw ConfigError("gen_reflectivity: empty amplitude range");

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution spike(spike_prob);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec x(n, 0.0);
  for (auto& v : x) {
    if (!spike(rng)) continue;
    const double u = unit(rng) * (neg_len + pos_len);
    v = u < neg_len ? x_min + u : floor + (u - neg_len);
  }
  return Signal(std::move(x));
}

Signal gen_observation(ConstSpan x, ConstSpan h, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ConfigError("gen_observation: sigma must be >= 0");
  Vec y = convolve(h, x);
  if (sigma > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    for (auto& v : y) v += noise(rng);
  }
  return Signal(std::move(y));
}

KernelConstraint kernel_constraint_from_truth(ConstSpan h_true, double radius_factor) {
  const auto [lo, hi] = std::minmax_element(h_true.begin(), h_true.end());
  return KernelConstraint(*lo, *hi, radius_factor * norm2(h_true));
}

std::pair<Signal, Kernel> init_strategy(std::size_t n, std::size_t s,
                                        std::pair<double, double> amp_range,
                                        const KernelConstraint& c) {
  const double m = std::max(std::abs(amp_range.first), std::abs(amp_range.second));
  Vec x0(n, m / std::sqrt(static_cast<double>(n)));

  const double center = static_cast<double>(center_offset(s));
  const double sd = static_cast<double>(s) / 8.0;
  Vec g(s);
  for (std::size_t i = 0; i < s; ++i) {
    const double d = (static_cast<double>(i) - center) / sd;
    g[i] = std::exp(-0.5 * d * d);
  }
  return {Signal(std::move(x0)), Kernel(project_box_ball(g, c))};
}

std::uint64_t splitmix64(std::uint64_t v) {
  v += 0x9E3779B97F4A7C15ULL;
  v = (v ^ (v >> 30)) * 0xBF58476D1CE4E5B9ULL;
  v = (v ^ (v >> 27)) * 0x94D049BB133111EBULL;
  return v ^ (v >> 31);
}

std::uint64_t realization_seed(std::uint64_t master, std::size_t sigma_index, std::size_t index) {
  return splitmix64(splitmix64(master ^ index) + sigma_index);
}

}  // namespace soot::bench
