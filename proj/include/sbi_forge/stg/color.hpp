#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "sbi_forge/core/raster.hpp"
#include "sbi_forge/stg/params.hpp"

namespace sbi_forge {

namespace color_detail {

struct Hsv {
  double h, s, v;  // h in degrees [0, 360)
};

inline Hsv rgb_to_hsv(double r, double g, double b) noexcept {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double d = mx - mn;
  Hsv out{0.0, mx > 0.0 ? d / mx : 0.0, mx};
  if (d > 0.0) {
    if (mx == r) {
      out.h = 60.0 * std::fmod((g - b) / d, 6.0);
    } else if (mx == g) {
      out.h = 60.0 * ((b - r) / d + 2.0);
    } else {
      out.h = 60.0 * ((r - g) / d + 4.0);
    }
    if (out.h < 0.0) out.h += 360.0;
  }
  return out;
}

inline std::array<double, 3> hsv_to_rgb(const Hsv& hsv) noexcept {
  const double c = hsv.v * hsv.s;
  const double hp = hsv.h / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  const double m = hsv.v - c;
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp) % 6) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  return {r + m, g + m, b + m};
}

}  // namespace color_detail

/// RGB shift -> HSV adjustment -> brightness/contrast, each stage clamped
/// to [0, 1]. Stages whose parameters are the identity are skipped, so the
/// identity ColorParams returns the input bit-for-bit.
inline ImageTensor color_transform(const ImageTensor& img, const ColorParams& p) {
  ImageTensor out = img;
  auto d = out.data();
  const std::size_t n = out.pixel_count();

  if (!p.rgb_is_identity()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < 3; ++c) d[i * 3 + c] = clamp_unit(d[i * 3 + c] + p.rgb_shift[c]);
    }
  }

  if (!p.hsv_is_identity()) {
    for (std::size_t i = 0; i < n; ++i) {
      auto hsv = color_detail::rgb_to_hsv(d[i * 3], d[i * 3 + 1], d[i * 3 + 2]);
      hsv.h = std::fmod(hsv.h + p.hue_shift, 360.0);
      if (hsv.h < 0.0) hsv.h += 360.0;
      hsv.s = std::clamp(hsv.s * p.sat_scale, 0.0, 1.0);
      hsv.v = std::clamp(hsv.v * p.val_scale, 0.0, 1.0);
      const auto rgb = color_detail::hsv_to_rgb(hsv);
      for (std::size_t c = 0; c < 3; ++c) d[i * 3 + c] = clamp_unit(rgb[c]);
    }
  }

  if (!p.brightness_contrast_is_identity()) {
    for (float& v : d) {
      v = clamp_unit((v - 0.5) * p.contrast_scale + 0.5 + p.brightness_shift);
    }
  }
  return out;
}

}  // namespace sbi_forge
