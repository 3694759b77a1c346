#pragma once

#include <cmath>
#include <vector>

#include "sbi_forge/core/error.hpp"
#include "sbi_forge/core/filters.hpp"
#include "sbi_forge/core/landmarks.hpp"
#include "sbi_forge/core/raster.hpp"
#include "sbi_forge/core/rng.hpp"

namespace sbi_forge {

/// Per-point offsets bounded by jitter * D, D = landmark bounding-box
/// diagonal. Draw order: x then y for each point in sequence.
inline std::vector<Point2> sample_landmark_offsets(const Landmarks& landmarks, RngStream& stream,
                                                   double jitter) {
  if (!(jitter >= 0.0) || !std::isfinite(jitter)) throw ParameterError("landmark jitter must be >= 0");
  landmarks.validate(1);
  const double bound = jitter * bounding_box(landmarks.points).diagonal();
  std::vector<Point2> offsets(landmarks.size());
  for (auto& o : offsets) {
    o.x = draw_uniform(stream, -bound, bound);
    o.y = draw_uniform(stream, -bound, bound);
  }
  return offsets;
}

inline Landmarks apply_landmark_offsets(const Landmarks& landmarks,
                                        const std::vector<Point2>& offsets) {
  if (offsets.size() != landmarks.size()) {
    throw ShapeError("landmark offsets count " + std::to_string(offsets.size()) +
                     " != landmark count " + std::to_string(landmarks.size()));
  }
  Landmarks out = landmarks;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    out.points[i].x += offsets[i].x;
    out.points[i].y += offsets[i].y;
  }
  return out;
}

// Stand-in for the face X-ray landmark transformation: independent uniform
// jitter per point.
inline Landmarks landmark_deform(const Landmarks& landmarks, RngStream& stream, double jitter) {
  return apply_landmark_offsets(landmarks, sample_landmark_offsets(landmarks, stream, jitter));
}

/// Displacement field (dx, dy), row-major, one value per pixel.
struct DisplacementField {
  int height = 0;
  int width = 0;
  std::vector<double> dx;
  std::vector<double> dy;
};

/// dx, dy ~ U(-1, 1) per pixel (all dx, then all dy), each smoothed by a
/// Gaussian of width sigma and scaled by alpha.
inline DisplacementField sample_displacement_field(RngStream& stream, int height, int width,
                                                   double alpha, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("elastic sigma must be > 0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterError("elastic alpha must be >= 0");
  const auto n = static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  std::vector<double> rx(n), ry(n);
  for (double& v : rx) v = draw_uniform(stream, -1.0, 1.0);
  for (double& v : ry) v = draw_uniform(stream, -1.0, 1.0);
  DisplacementField f{height, width, gaussian_smooth_field(rx, height, width, sigma),
                      gaussian_smooth_field(ry, height, width, sigma)};
  for (double& v : f.dx) v *= alpha;
  for (double& v : f.dy) v *= alpha;
  return f;
}

/// Resamples the mask at (x + dx, y + dy), bilinear, zero outside.
inline BlendMask elastic_warp(const BlendMask& mask, const DisplacementField& field) {
  if (field.height != mask.height() || field.width != mask.width()) {
    throw ShapeError("displacement field does not match mask dimensions");
  }
  BlendMask out(mask.height(), mask.width(), 0.0f);
  out.set_ratio(mask.ratio());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      const auto i = static_cast<std::size_t>(y) * static_cast<std::size_t>(mask.width()) +
                     static_cast<std::size_t>(x);
      out.at(y, x) = clamp_unit(sample_bilinear_zero(mask.plane(), x + field.dx[i], y + field.dy[i]));
    }
  }
  return out;
}

inline BlendMask elastic_deform(const BlendMask& mask, RngStream& stream, double alpha, double sigma) {
  if (alpha == 0.0 && sigma > 0.0) return mask;
  const auto field = sample_displacement_field(stream, mask.height(), mask.width(), alpha, sigma);
  return elastic_warp(mask, field);
}

}  // namespace sbi_forge
