#pragma once

// Experiment configuration. The on-disk form is a JSON object whose keys
// match the field names below; unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "soot/baseline.hpp"
#include "soot/penalty.hpp"
#include "soot/solver.hpp"

namespace soot::bench {

struct SootSettings {
  /// lambda = lambda_rel * ||y||^2 unless lambda_abs is set.
  double lambda_rel = 3e-2;
  std::optional<double> lambda_abs;
  double alpha = 3e-4;
  double beta = 1e-2;
  double eta = 3e-2;
  int inner_x = 71;
  int inner_h = 1;
  double step_x = 1.0;
  double step_h = 1.0;
  double stop_tol = 1e-6;
  int max_outer = 5000;

  SootParams params_for(ConstSpan y) const;
  SolverConfig solver_config() const;
};

struct BaselineSettings {
  double lambda_b = 0.2;
  int ista_iters = 50;
  int outer_iters = 5000;
  double stop_tol = 1e-6;
  double step_scale = 0.95;

  BaselineConfig baseline_config() const;
};

struct GridSettings {
  std::vector<double> lambda_rel{1e-2, 3e-2, 5e-2};
  std::vector<double> alpha{1e-4, 3e-4, 1e-3};
  std::vector<double> beta{1e-3, 1e-2, 1e-1};
  std::vector<double> eta{1e-2, 3e-2, 1e-1};
  std::vector<double> lambda_b{0.05, 0.1, 0.2, 0.5};
  int realizations = 3;
  double sigma = 0.03;
};

struct ExperimentConfig {
  std::size_t n = 784;
  std::size_t s = 41;
  std::vector<double> sigma_list{0.01, 0.02, 0.03};
  int realizations = 30;
  std::uint64_t seed = 1;
  double spike_prob = 0.05;
  double x_min = -1.0;
  double x_max = 1.0;
  double ricker_peak_hz = 24.0;
  double sample_interval_s = 0.004;
  double radius_factor = 1.05;
  SootSettings soot;
  BaselineSettings baseline;
  GridSettings grid;
  std::vector<int> j_values{1, 5, 15, 40, 71, 120, 200};
  int innerloop_realizations = 30;
  double innerloop_sigma = 0.03;
  /// Outer cap for the inner-loop study; small J needs far more outer
  /// iterations to reach the stopping criterion than the table runs allow.
  int innerloop_max_outer = 200000;
  /// Diagnostics only: rescale estimates by the optimal scalar before
  /// computing errors.
  bool align_scale = false;
  /// 0 keeps the OpenMP default.
  int threads = 0;

  void validate() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

/// Throws IoError when unreadable, ConfigError on bad keys or values.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace soot::bench
