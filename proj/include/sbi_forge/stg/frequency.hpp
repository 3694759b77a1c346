#pragma once

#include <string>

#include "sbi_forge/core/filters.hpp"
#include "sbi_forge/core/raster.hpp"
#include "sbi_forge/stg/params.hpp"

namespace sbi_forge {

/// Downscale: bilinear to (factor*H, factor*W) and back, dropping high
/// frequencies. Sharpen: unsharp mask clamp(img + alpha * (img - blur(img))).
inline ImageTensor frequency_transform(const ImageTensor& img, const FrequencyParams& p) {
  p.validate();
  if (p.is_identity()) return img;

  if (p.mode == FrequencyMode::downscale) {
    const long h = round_half_away(p.downscale_factor * img.height());
    const long w = round_half_away(p.downscale_factor * img.width());
    if (h < 1 || w < 1) {
      throw ParameterError("downscale factor " + std::to_string(p.downscale_factor) +
                           " rounds below 1 pixel");
    }
    const auto small = resize_bilinear(img, static_cast<int>(h), static_cast<int>(w));
    return resize_bilinear(small, img.height(), img.width());
  }

  const auto blurred = gaussian_blur(img, kernel_size_for_sigma(p.sharpen_sigma), p.sharpen_sigma);
  ImageTensor out(img.height(), img.width());
  const auto src = img.data();
  const auto blr = blurred.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = clamp_unit(src[i] + p.sharpen_alpha * (static_cast<double>(src[i]) - blr[i]));
  }
  return out;
}

}  // namespace sbi_forge
