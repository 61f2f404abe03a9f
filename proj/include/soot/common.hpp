#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace soot {

using Vec = std::vector<double>;
using ConstSpan = std::span<const double>;

/// Invalid sizes, parameters or malformed input data.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an algorithm does not hold (e.g. an
/// infeasible starting point).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double dot(ConstSpan a, ConstSpan b) {
  CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
  return s.value();
}

inline double squared_norm(ConstSpan a) { return dot(a, a); }

inline double norm2(ConstSpan a) { return std::sqrt(squared_norm(a)); }

inline double norm1(ConstSpan a) {
  CompensatedSum s;
  for (double v : a) s.add(std::abs(v));
  return s.value();
}

inline double distance(ConstSpan a, ConstSpan b) {
  CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s.add(d * d);
  }
  return std::sqrt(s.value());
}

inline bool all_finite(ConstSpan a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace soot
