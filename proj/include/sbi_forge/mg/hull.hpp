#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sbi_forge/core/error.hpp"
#include "sbi_forge/core/landmarks.hpp"
#include "sbi_forge/core/raster.hpp"

namespace sbi_forge {

namespace hull_detail {
inline double cross(const Point2& o, const Point2& a, const Point2& b) noexcept {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}
}  // namespace hull_detail

/// Convex hull in counter-clockwise order (y up), collinear points dropped.
/// Andrew's monotone chain.
inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  using hull_detail::cross;
  if (pts.size() < 3) throw DegenerateHullError("convex hull needs at least 3 points");
  std::ranges::sort(pts, [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0.0) --k;
    hull[k++] = *it;
  }
  hull.resize(k > 0 ? k - 1 : 0);
  if (hull.size() < 3) throw DegenerateHullError("landmarks are collinear or duplicated");
  return hull;
}

/// True when p lies inside or on the boundary of a counter-clockwise hull.
inline bool hull_contains(const std::vector<Point2>& hull, const Point2& p) noexcept {
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    if (hull_detail::cross(a, b, p) < 0.0) return false;
  }
  return true;
}

/// Binary mask: 1 where the pixel center (x, y) is inside or on the hull.
/// Landmarks outside the raster still shape the hull.
inline BlendMask convex_hull_mask(const Landmarks& landmarks, int height, int width) {
  landmarks.validate();
  const auto hull = convex_hull(landmarks.points);
  BlendMask mask(height, width, 0.0f);

  const auto box = bounding_box(hull);
  const int y_lo = std::max(0, static_cast<int>(std::ceil(box.y0)));
  const int y_hi = std::min(height - 1, static_cast<int>(std::floor(box.y1)));
  for (int y = y_lo; y <= y_hi; ++y) {
    // Row span from edge intersections, then refine the ends with the exact
    // half-plane predicate so the result matches hull_contains everywhere.
    double xl = box.x1;
    double xr = box.x0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const auto& a = hull[i];
      const auto& b = hull[(i + 1) % hull.size()];
      if ((a.y <= y && b.y >= y) || (b.y <= y && a.y >= y)) {
        if (a.y == b.y) {
          xl = std::min({xl, a.x, b.x});
          xr = std::max({xr, a.x, b.x});
        } else {
          const double x = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
          xl = std::min(xl, x);
          xr = std::max(xr, x);
        }
      }
    }
    if (xl > xr) continue;
    const int x_lo = std::max(0, static_cast<int>(std::floor(xl)) - 1);
    const int x_hi = std::min(width - 1, static_cast<int>(std::ceil(xr)) + 1);
    for (int x = x_lo; x <= x_hi; ++x) {
      const bool interior = x > xl + 1.0 && x < xr - 1.0;
      if (interior || hull_contains(hull, {static_cast<double>(x), static_cast<double>(y)})) {
        mask.at(y, x) = 1.0f;
      }
    }
  }
  return mask;
}

}  // namespace sbi_forge
