#pragma once

#include <array>
#include <cmath>
#include <string>

#include "sbi_forge/core/error.hpp"

namespace sbi_forge {

/// Color perturbation. The default-constructed value is the identity.
struct ColorParams {
  std::array<double, 3> rgb_shift{0.0, 0.0, 0.0};
  double hue_shift = 0.0;  // degrees
  double sat_scale = 1.0;
  double val_scale = 1.0;
  double brightness_shift = 0.0;
  double contrast_scale = 1.0;

  bool rgb_is_identity() const noexcept {
    return rgb_shift[0] == 0.0 && rgb_shift[1] == 0.0 && rgb_shift[2] == 0.0;
  }
  bool hsv_is_identity() const noexcept {
    return hue_shift == 0.0 && sat_scale == 1.0 && val_scale == 1.0;
  }
  bool brightness_contrast_is_identity() const noexcept {
    return brightness_shift == 0.0 && contrast_scale == 1.0;
  }
  bool is_identity() const noexcept {
    return rgb_is_identity() && hsv_is_identity() && brightness_contrast_is_identity();
  }
  friend bool operator==(const ColorParams&, const ColorParams&) = default;
};

enum class FrequencyMode { none, downscale, sharpen };

inline const char* to_string(FrequencyMode m) noexcept {
  switch (m) {
    case FrequencyMode::downscale: return "downscale";
    case FrequencyMode::sharpen: return "sharpen";
    case FrequencyMode::none: break;
  }
  return "none";
}

inline FrequencyMode frequency_mode_from_string(const std::string& s) {
  if (s == "none") return FrequencyMode::none;
  if (s == "downscale") return FrequencyMode::downscale;
  if (s == "sharpen") return FrequencyMode::sharpen;
  throw ParameterError("unknown frequency mode '" + s + "'");
}

struct FrequencyParams {
  FrequencyMode mode = FrequencyMode::none;
  double downscale_factor = 1.0;  // (0, 1]
  double sharpen_alpha = 0.0;     // [0, 1]
  double sharpen_sigma = 1.0;     // pixels

  bool is_identity() const noexcept {
    return mode == FrequencyMode::none ||
           (mode == FrequencyMode::downscale && downscale_factor == 1.0) ||
           (mode == FrequencyMode::sharpen && sharpen_alpha == 0.0);
  }

  void validate() const {
    if (!(downscale_factor > 0.0 && downscale_factor <= 1.0)) {
      throw ParameterError("downscale factor outside (0, 1]");
    }
    if (!(sharpen_alpha >= 0.0 && sharpen_alpha <= 1.0)) {
      throw ParameterError("sharpen alpha outside [0, 1]");
    }
    if (!(sharpen_sigma > 0.0) || !std::isfinite(sharpen_sigma)) {
      throw ParameterError("sharpen sigma must be > 0");
    }
  }
  friend bool operator==(const FrequencyParams&, const FrequencyParams&) = default;
};

// Half-away-from-zero, the rounding used for every derived pixel count.
inline long round_half_away(double v) { return std::lround(v); }

/// Scale (u_h, u_w) and translation fractions (v_h, v_w) for a base size H x W.
struct ResizeTranslateParams {
  double u_h = 1.0, u_w = 1.0;
  double v_h = 0.0, v_w = 0.0;
  int height = 0, width = 0;  // H, W of the raster the params were drawn for

  // H_r = u_h * H, W_r = u_w * W, rounded, at least 1.
  int resized_height() const { return static_cast<int>(std::max(1L, round_half_away(u_h * height))); }
  int resized_width() const { return static_cast<int>(std::max(1L, round_half_away(u_w * width))); }
  // t = [t_h, t_w] = [v_h * H, v_w * W]; positive moves content down / right.
  int shift_rows() const { return static_cast<int>(round_half_away(v_h * height)); }
  int shift_cols() const { return static_cast<int>(round_half_away(v_w * width)); }

  bool is_identity() const noexcept { return u_h == 1.0 && u_w == 1.0 && v_h == 0.0 && v_w == 0.0; }

  void validate() const {
    if (height < 1 || width < 1) throw ParameterError("resize-translate base size must be >= 1");
    for (double v : {u_h, u_w, v_h, v_w}) {
      if (!std::isfinite(v)) throw ParameterError("resize-translate parameter is not finite");
    }
    if (!(u_h > 0.0 && u_w > 0.0)) throw ParameterError("resize scale must be > 0");
    if (round_half_away(u_h * height) < 1 || round_half_away(u_w * width) < 1) {
      throw ParameterError("resized dimension rounds below 1 pixel");
    }
  }
  friend bool operator==(const ResizeTranslateParams&, const ResizeTranslateParams&) = default;
};

}  // namespace sbi_forge
