#pragma once

#include <algorithm>

#include "sbi_forge/core/filters.hpp"
#include "sbi_forge/core/raster.hpp"
#include "sbi_forge/stg/params.hpp"

namespace sbi_forge {

/// Resize to (H_r, W_r), zero-pad or center-crop back to H x W (odd
/// remainders go to the bottom/right), then shift by (t_h, t_w) with zero
/// fill. Works on any channel count so the mask follows the image exactly.
template <std::size_t C>
Raster<C> resize_translate(const Raster<C>& img, const ResizeTranslateParams& p) {
  p.validate();
  if (!img.same_shape(p.height, p.width)) {
    throw ShapeError("resize_translate: params drawn for " + std::to_string(p.height) + "x" +
                     std::to_string(p.width) + ", raster is " + std::to_string(img.height()) +
                     "x" + std::to_string(img.width()));
  }
  if (p.is_identity()) return img;

  const int h = img.height();
  const int w = img.width();
  const int rh = p.resized_height();
  const int rw = p.resized_width();
  const auto resized = resize_bilinear(img, rh, rw);

  // Output (y, x) reads resized (y - t_h - off_y, x - t_w - off_x), where off
  // is the centering offset (positive when padding, negative when cropping).
  const int off_y = h >= rh ? (h - rh) / 2 : -((rh - h) / 2);
  const int off_x = w >= rw ? (w - rw) / 2 : -((rw - w) / 2);
  const int dy = p.shift_rows() + off_y;
  const int dx = p.shift_cols() + off_x;

  Raster<C> out(h, w, 0.0f);
  for (int y = 0; y < h; ++y) {
    const int sy = y - dy;
    if (sy < 0 || sy >= rh) continue;
    for (int x = 0; x < w; ++x) {
      const int sx = x - dx;
      if (sx < 0 || sx >= rw) continue;
      for (std::size_t c = 0; c < C; ++c) out.at(y, x, c) = resized.at(sy, sx, c);
    }
  }
  return out;
}

inline ResizeTranslateParams make_resize_translate(double u_h, double u_w, double v_h, double v_w,
                                                   int height, int width) {
  ResizeTranslateParams p{u_h, u_w, v_h, v_w, height, width};
  p.validate();
  return p;
}

}  // namespace sbi_forge
