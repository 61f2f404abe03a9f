#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "soot/common.hpp"

namespace soot {

/// Finite, nonempty 1-D array of reals. The tag distinguishes signals
/// (length N) from kernels (length S) at API boundaries; arithmetic is done
/// on spans.
template <class Tag>
class Array1D {
 public:
  Array1D() = default;

  explicit Array1D(Vec values) : values_(std::move(values)) {
    if (values_.empty()) {
      throw ConfigError(std::string(Tag::name) + ": length must be >= 1");
    }
    if (!all_finite(values_)) {
      throw ConfigError(std::string(Tag::name) + ": entries must be finite");
    }
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const Vec& values() const { return values_; }
  ConstSpan span() const { return values_; }
  operator ConstSpan() const { return values_; }  // NOLINT: deliberate view

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const Array1D&, const Array1D&) = default;

 private:
  Vec values_;
};

struct SignalTag {
  static constexpr const char* name = "signal";
};
struct KernelTag {
  static constexpr const char* name = "kernel";
};

using Signal = Array1D<SignalTag>;
using Kernel = Array1D<KernelTag>;

}  // namespace soot
