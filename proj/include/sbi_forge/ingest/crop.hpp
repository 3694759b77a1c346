#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "sbi_forge/core/error.hpp"
#include "sbi_forge/core/landmarks.hpp"
#include "sbi_forge/core/range.hpp"
#include "sbi_forge/core/raster.hpp"
#include "sbi_forge/core/rng.hpp"

namespace sbi_forge {

// per_side: each side grows by margin * face size.
// total: the face grows by margin * face size in all, split evenly.
enum class MarginMode { per_side, total };
enum class CropMode { train, inference };

inline const char* to_string(MarginMode m) noexcept { return m == MarginMode::total ? "total" : "per_side"; }
inline const char* to_string(CropMode m) noexcept { return m == CropMode::inference ? "inference" : "train"; }

inline MarginMode margin_mode_from_string(const std::string& s) {
  if (s == "per_side") return MarginMode::per_side;
  if (s == "total") return MarginMode::total;
  throw ValidationError("margin mode must be per_side or total, got '" + s + "'");
}
inline CropMode crop_mode_from_string(const std::string& s) {
  if (s == "train") return CropMode::train;
  if (s == "inference") return CropMode::inference;
  throw ValidationError("mode must be train or inference, got '" + s + "'");
}

struct CropConfig {
  Range train_margin{0.04, 0.20};
  double inference_margin = 0.125;
  MarginMode margin_mode = MarginMode::per_side;

  void validate() const {
    train_margin.validate("crop.train_margin");
    if (train_margin.lo < 0.0) throw ValidationError("crop.train_margin must be >= 0");
    if (!(inference_margin >= 0.0) || !std::isfinite(inference_margin)) {
      throw ValidationError("crop.inference_margin must be >= 0");
    }
  }
  friend bool operator==(const CropConfig&, const CropConfig&) = default;
};

/// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct CropRect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  int width() const noexcept { return x1 - x0; }
  int height() const noexcept { return y1 - y0; }
  friend bool operator==(const CropRect&, const CropRect&) = default;
};

/// Uniform in the training range, or the fixed inference margin.
inline double sample_margin(RngStream& stream, CropMode mode, const CropConfig& cfg = {}) {
  if (mode == CropMode::inference) return cfg.inference_margin;
  return draw_uniform(stream, cfg.train_margin.lo, cfg.train_margin.hi);
}

/// Extends the face box by the margin, rounds outward, clips to the image.
inline CropRect crop_rect(int img_height, int img_width, const BoundingBox& box, double margin,
                          MarginMode mode = MarginMode::per_side) {
  if (!(box.x0 < box.x1 && box.y0 < box.y1)) throw ParameterError("face box is inverted or empty");
  if (!(margin >= 0.0) || !std::isfinite(margin)) throw ParameterError("crop margin must be >= 0");
  if (box.x1 <= 0.0 || box.y1 <= 0.0 || box.x0 >= img_width || box.y0 >= img_height) {
    throw ParameterError("face box lies entirely outside the image");
  }
  const double per_side = mode == MarginMode::per_side ? margin : margin / 2.0;
  const double mx = per_side * box.width();
  const double my = per_side * box.height();
  CropRect r;
  r.x0 = std::max(0, static_cast<int>(std::floor(box.x0 - mx)));
  r.y0 = std::max(0, static_cast<int>(std::floor(box.y0 - my)));
  r.x1 = std::min(img_width, static_cast<int>(std::ceil(box.x1 + mx)));
  r.y1 = std::min(img_height, static_cast<int>(std::ceil(box.y1 + my)));
  if (r.width() < 1 || r.height() < 1) throw ParameterError("crop is empty after clipping");
  return r;
}

template <std::size_t C>
Raster<C> crop_image(const Raster<C>& img, const CropRect& r) {
  if (r.x0 < 0 || r.y0 < 0 || r.x1 > img.width() || r.y1 > img.height() || r.width() < 1 ||
      r.height() < 1) {
    throw ShapeError("crop rectangle outside the image");
  }
  Raster<C> out(r.height(), r.width());
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) {
      for (std::size_t c = 0; c < C; ++c) out.at(y, x, c) = img.at(r.y0 + y, r.x0 + x, c);
    }
  }
  return out;
}

// Re-expresses image-frame landmarks in crop coordinates.
inline Landmarks to_crop_frame(const Landmarks& lm, const CropRect& r) {
  return translate(lm, -static_cast<double>(r.x0), -static_cast<double>(r.y0));
}

struct CropResult {
  ImageTensor image;
  CropRect rect;  // rect.x0, rect.y0 is the landmark offset
};

inline CropResult crop_face(const ImageTensor& img, const BoundingBox& box, double margin,
                            MarginMode mode = MarginMode::per_side) {
  const auto rect = crop_rect(img.height(), img.width(), box, margin, mode);
  return {crop_image(img, rect), rect};
}

}  // namespace sbi_forge
