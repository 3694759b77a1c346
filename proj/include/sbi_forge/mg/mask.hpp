#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sbi_forge/core/range.hpp"
#include "sbi_forge/core/raster.hpp"
#include "sbi_forge/core/rng.hpp"
#include "sbi_forge/mg/deform.hpp"
#include "sbi_forge/mg/hull.hpp"
#include "sbi_forge/mg/smooth.hpp"
#include "sbi_forge/stg/params.hpp"
#include "sbi_forge/stg/resize_translate.hpp"

namespace sbi_forge {

inline const std::vector<double>& default_ratio_choices() {
  static const std::vector<double> choices{0.25, 0.5, 0.75, 1.0, 1.0, 1.0};
  return choices;
}

/// Sampling ranges for the mask generator.
struct MaskConfig {
  double landmark_jitter = 0.03;  // fraction of the landmark bbox diagonal
  Range elastic_alpha{0.0, 6.0};  // pixels
  Range elastic_sigma{4.0, 8.0};  // pixels
  // k = nearest odd integer to f * longest hull bbox side.
  Range kernel_fraction{0.05, 0.25};
  std::vector<double> ratio_choices = default_ratio_choices();

  static MaskConfig identity() {
    MaskConfig c;
    c.landmark_jitter = 0.0;
    c.elastic_alpha = Range::point(0.0);
    c.kernel_fraction = Range::point(0.0);
    c.ratio_choices = {1.0};
    return c;
  }

  void validate() const {
    if (!(landmark_jitter >= 0.0) || !std::isfinite(landmark_jitter)) {
      throw ValidationError("mg.landmark_jitter must be >= 0");
    }
    elastic_alpha.validate("mg.elastic_alpha");
    elastic_sigma.validate("mg.elastic_sigma");
    kernel_fraction.validate("mg.kernel_fraction");
    if (elastic_alpha.lo < 0.0) throw ValidationError("mg.elastic_alpha must be >= 0");
    if (!(elastic_sigma.lo > 0.0)) throw ValidationError("mg.elastic_sigma must be > 0");
    if (kernel_fraction.lo < 0.0) throw ValidationError("mg.kernel_fraction must be >= 0");
    if (ratio_choices.empty()) throw ValidationError("mg.ratio_choices must not be empty");
    for (double r : ratio_choices) {
      if (!(r > 0.0 && r <= 1.0)) throw ValidationError("mg.ratio_choices values must lie in (0, 1]");
    }
  }
  friend bool operator==(const MaskConfig&, const MaskConfig&) = default;
};

/// Concrete mask parameters of one sample.
struct MaskParams {
  std::vector<Point2> landmark_offsets;
  double elastic_alpha = 0.0;
  double elastic_sigma = 4.0;
  StreamKey elastic_field;
  int k1 = 1;
  int k2 = 1;
  double ratio = 1.0;

  void validate(std::size_t landmark_count) const {
    if (landmark_offsets.size() != landmark_count) {
      throw ParameterError("landmark offset count does not match landmark count");
    }
    for (const auto& o : landmark_offsets) {
      if (!std::isfinite(o.x) || !std::isfinite(o.y)) throw ParameterError("landmark offset not finite");
    }
    if (!(elastic_alpha >= 0.0) || !std::isfinite(elastic_alpha)) throw ParameterError("elastic alpha must be >= 0");
    if (!(elastic_sigma > 0.0) || !std::isfinite(elastic_sigma)) throw ParameterError("elastic sigma must be > 0");
    for (int k : {k1, k2}) {
      if (k < 1 || k % 2 == 0) throw ParameterError("mask kernel sizes must be odd and >= 1");
    }
    if (!(ratio > 0.0 && ratio <= 1.0)) throw ParameterError("blend ratio outside (0, 1]");
  }
  friend bool operator==(const MaskParams&, const MaskParams&) = default;
};

// Nearest odd integer to v, at least 1.
inline int nearest_odd(double v) {
  if (!(v >= 1.0)) return 1;
  return 2 * static_cast<int>(std::floor(v / 2.0)) + 1;
}

inline BlendMask scale_mask(const BlendMask& mask, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw ParameterError("blend ratio outside (0, 1]");
  BlendMask out = mask;
  if (r != 1.0) {
    for (float& v : out.data()) v = static_cast<float>(v * r);
  }
  out.set_ratio(r);
  return out;
}

inline BlendMask apply_blend_ratio(const BlendMask& mask, RngStream& stream,
                                   const std::vector<double>& choices) {
  for (double r : choices) {
    if (!(r > 0.0 && r <= 1.0)) throw ParameterError("blend ratio choice outside (0, 1]");
  }
  return scale_mask(mask, draw_choice(stream, choices));
}

inline BlendMask binarize(const BlendMask& mask, float threshold = 0.5f) {
  BlendMask out = mask;
  for (float& v : out.data()) v = v >= threshold ? 1.0f : 0.0f;
  return out;
}

/// Draws every mask parameter. Sub-streams: landmark_transform (offsets),
/// mask_kernels (alpha, sigma, k1, k2 fractions), elastic_field (field key),
/// blend_ratio (r).
inline MaskParams sample_mask_params(const Landmarks& landmarks, const MaskConfig& cfg,
                                     const RngStream& stream) {
  // Collinear or duplicate input landmarks are rejected before jitter could
  // turn them into a sliver of a hull.
  convex_hull(landmarks.points);
  MaskParams p;
  auto lm_stream = stream.child(StreamTag::landmark_transform);
  p.landmark_offsets = sample_landmark_offsets(landmarks, lm_stream, cfg.landmark_jitter);

  const auto deformed = apply_landmark_offsets(landmarks, p.landmark_offsets);
  const auto box = bounding_box(deformed.points);
  const double side = std::max(box.width(), box.height());
  auto k_stream = stream.child(StreamTag::mask_kernels);
  p.elastic_alpha = draw_uniform(k_stream, cfg.elastic_alpha.lo, cfg.elastic_alpha.hi);
  p.elastic_sigma = draw_uniform(k_stream, cfg.elastic_sigma.lo, cfg.elastic_sigma.hi);
  p.k1 = nearest_odd(draw_uniform(k_stream, cfg.kernel_fraction.lo, cfg.kernel_fraction.hi) * side);
  p.k2 = nearest_odd(draw_uniform(k_stream, cfg.kernel_fraction.lo, cfg.kernel_fraction.hi) * side);

  p.elastic_field = stream.child(StreamTag::elastic_field).key();
  auto r_stream = stream.child(StreamTag::blend_ratio);
  p.ratio = draw_choice(r_stream, cfg.ratio_choices);
  return p;
}

/// Landmark transform -> hull -> resize/translate (same params as the
/// source) -> elastic warp -> binarize at 0.5 -> dual Gaussian -> ratio.
inline BlendMask render_mask(const Landmarks& landmarks, int height, int width,
                             const MaskParams& p, const ResizeTranslateParams& rt) {
  p.validate(landmarks.size());
  convex_hull(landmarks.points);
  const auto deformed = apply_landmark_offsets(landmarks, p.landmark_offsets);
  BlendMask mask = convex_hull_mask(deformed, height, width);
  mask = BlendMask(resize_translate(mask.plane(), rt));
  if (p.elastic_alpha > 0.0) {
    RngStream field_stream(p.elastic_field);
    mask = elastic_warp(mask, sample_displacement_field(field_stream, height, width,
                                                        p.elastic_alpha, p.elastic_sigma));
  }
  mask = binarize(mask);
  if (mask.support_area() == 0) throw DegenerateHullError("mask is empty after deformation");
  mask = dual_gaussian_smooth(mask, p.k1, p.k2);
  if (mask.support_area() == 0) throw DegenerateHullError("mask is empty after smoothing");
  return scale_mask(mask, p.ratio);
}

struct MaskResult {
  BlendMask mask;
  MaskParams params;
};

inline MaskResult generate_mask(const Landmarks& landmarks, int height, int width,
                                const MaskConfig& cfg, const ResizeTranslateParams& rt,
                                const RngStream& stream) {
  cfg.validate();
  auto params = sample_mask_params(landmarks, cfg, stream);
  auto mask = render_mask(landmarks, height, width, params, rt);
  return {std::move(mask), std::move(params)};
}

}  // namespace sbi_forge
