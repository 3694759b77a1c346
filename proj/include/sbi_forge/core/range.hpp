#pragma once

#include <cmath>
#include <string>

#include "sbi_forge/core/error.hpp"

namespace sbi_forge {

/// Closed sampling interval [lo, hi]; lo == hi collapses it to a constant.
struct Range {
  double lo = 0.0;
  double hi = 0.0;

  static constexpr Range point(double v) noexcept { return {v, v}; }

  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
  bool is_point() const noexcept { return lo == hi; }

  void validate(const std::string& name) const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
      throw ValidationError(name + ": range must be finite with min <= max, got [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
  friend bool operator==(const Range&, const Range&) = default;
};

}  // namespace sbi_forge
