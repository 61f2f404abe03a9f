#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "soot/common.hpp"

namespace soot::bench {

/// Per-sample normalized errors: l2 is the RMS, l1 the mean absolute error.
struct ErrorPair {
  double l2 = 0.0;
  double l1 = 0.0;
};

ErrorPair error_metrics(ConstSpan truth, ConstSpan estimate);

/// Unnormalized ||truth - estimate||_2 and ||truth - estimate||_1.
ErrorPair raw_error_norms(ConstSpan truth, ConstSpan estimate);

struct MetricsRow {
  double sigma = 0.0;
  std::string method;
  ErrorPair signal, kernel, obs;
  ErrorPair signal_std, kernel_std, obs_std;
  double time_s = 0.0;
  double time_std = 0.0;
  int runs = 0;
  int failures = 0;
};

inline constexpr const char* kMetricsHeader =
    "sigma,method,l2_signal,l1_signal,l2_kernel,l1_kernel,l2_obs,l1_obs,time_s,failures";

/// Means only, header kMetricsHeader.
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows);

/// Means, standard deviations and run counts.
void write_metrics_detail_csv(std::ostream& out, const std::vector<MetricsRow>& rows);

/// Mean and (population) standard deviation.
std::pair<double, double> mean_std(const std::vector<double>& v);

}  // namespace soot::bench
