#include "soot/bench/metrics.hpp"

#include <cmath>
#include <ostream>

namespace soot::bench {

ErrorPair raw_error_norms(ConstSpan truth, ConstSpan estimate) {
  if (truth.size() != estimate.size()) throw ConfigError("error_metrics: length mismatch");
  CompensatedSum sq, ab;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = truth[i] - estimate[i];
    sq.add(d * d);
    ab.add(std::abs(d));
  }
  return {std::sqrt(sq.value()), ab.value()};
}

ErrorPair error_metrics(ConstSpan truth, ConstSpan estimate) {
  const ErrorPair raw = raw_error_norms(truth, estimate);
  const auto n = static_cast<double>(truth.size());
  return {raw.l2 / std::sqrt(n), raw.l1 / n};
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {std::nan(""), std::nan("")};
  CompensatedSum s;
  for (double e : v) s.add(e);
  const double mean = s.value() / static_cast<double>(v.size());
  CompensatedSum d;
  for (double e : v) d.add((e - mean) * (e - mean));
  return {mean, std::sqrt(d.value() / static_cast<double>(v.size()))};
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
  const auto old = out.precision(10);
  out << kMetricsHeader << '\n';
  for (const auto& r : rows) {
    out << r.sigma << ',' << r.method << ',' << r.signal.l2 << ',' << r.signal.l1 << ','
        << r.kernel.l2 << ',' << r.kernel.l1 << ',' << r.obs.l2 << ',' << r.obs.l1 << ','
        << r.time_s << ',' << r.failures << '\n';
  }
  out.precision(old);
}

void write_metrics_detail_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
  const auto old = out.precision(10);
  out << "sigma,method,runs,failures,l2_signal,l2_signal_std,l1_signal,l1_signal_std,"
         "l2_kernel,l2_kernel_std,l1_kernel,l1_kernel_std,l2_obs,l2_obs_std,l1_obs,l1_obs_std,"
         "time_s,time_s_std\n";
  for (const auto& r : rows) {
    out << r.sigma << ',' << r.method << ',' << r.runs << ',' << r.failures << ','
        << r.signal.l2 << ',' << r.signal_std.l2 << ',' << r.signal.l1 << ',' << r.signal_std.l1
        << ',' << r.kernel.l2 << ',' << r.kernel_std.l2 << ',' << r.kernel.l1 << ','
        << r.kernel_std.l1 << ',' << r.obs.l2 << ',' << r.obs_std.l2 << ',' << r.obs.l1 << ','
        << r.obs_std.l1 << ',' << r.time_s << ',' << r.time_std << '\n';
  }
  out.precision(old);
}

}  // namespace soot::bench
