#pragma once

#include <string>

#include "sbi_forge/core/error.hpp"
#include "sbi_forge/core/filters.hpp"
#include "sbi_forge/core/raster.hpp"

namespace sbi_forge {

// "Less than 1" on an 8-bit scale: values below 1 - 1/255 count as not full.
inline constexpr double mask_threshold_epsilon = 1.0 / 255.0;

/// Blur (k1), keep only fully-covered pixels, blur (k2). k1 > k2 erodes the
/// support, k2 > k1 dilates it.
inline BlendMask dual_gaussian_smooth(const BlendMask& mask, int k1, int k2) {
  for (int k : {k1, k2}) {
    if (k < 1 || k % 2 == 0) {
      throw ParameterError("gaussian kernel size must be odd and >= 1, got " + std::to_string(k));
    }
  }
  if (!mask.is_binary()) throw PreconditionError("dual_gaussian_smooth expects a binary mask");

  Plane stage = gaussian_blur(mask.plane(), k1);
  for (float& v : stage.data()) v = v < 1.0 - mask_threshold_epsilon ? 0.0f : 1.0f;
  BlendMask out(gaussian_blur(stage, k2), mask.ratio());
  return out;
}

}  // namespace sbi_forge
