#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sbi_forge/core/error.hpp"

namespace sbi_forge {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Ordered facial keypoints in the pixel frame of the paired image.
/// Pixel (col x, row y) has its center at the integer coordinate (x, y).
struct Landmarks {
  static constexpr std::size_t default_count = 81;

  std::vector<Point2> points;

  std::size_t size() const noexcept { return points.size(); }

  void validate(std::size_t min_count = 3) const {
    if (points.size() < min_count) {
      throw DegenerateHullError("need at least " + std::to_string(min_count) + " landmarks, got " +
                                std::to_string(points.size()));
    }
    for (const auto& p : points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw ParameterError("landmark coordinate is not finite");
      }
    }
  }

  friend bool operator==(const Landmarks&, const Landmarks&) = default;
};

struct BoundingBox {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double width() const noexcept { return x1 - x0; }
  double height() const noexcept { return y1 - y0; }
  double diagonal() const noexcept { return std::hypot(width(), height()); }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

inline BoundingBox bounding_box(const std::vector<Point2>& pts) {
  BoundingBox b{pts.front().x, pts.front().y, pts.front().x, pts.front().y};
  for (const auto& p : pts) {
    b.x0 = std::min(b.x0, p.x);
    b.y0 = std::min(b.y0, p.y);
    b.x1 = std::max(b.x1, p.x);
    b.y1 = std::max(b.y1, p.y);
  }
  return b;
}

inline Landmarks translate(const Landmarks& lm, double dx, double dy) {
  Landmarks out = lm;
  for (auto& p : out.points) {
    p.x += dx;
    p.y += dy;
  }
  return out;
}

}  // namespace sbi_forge
