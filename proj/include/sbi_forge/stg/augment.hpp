#pragma once

#include <array>
#include <tuple>
#include <utility>

#include "sbi_forge/core/range.hpp"
#include "sbi_forge/core/raster.hpp"
#include "sbi_forge/core/rng.hpp"
#include "sbi_forge/stg/color.hpp"
#include "sbi_forge/stg/frequency.hpp"
#include "sbi_forge/stg/params.hpp"
#include "sbi_forge/stg/resize_translate.hpp"

namespace sbi_forge {

/// Sampling ranges for the source-target generator.
struct StgConfig {
  Range rgb_shift{-20.0 / 255.0, 20.0 / 255.0};
  Range hue_shift{-10.0, 10.0};
  Range sat_scale{0.7, 1.3};
  Range val_scale{0.7, 1.3};
  Range brightness_shift{-0.1, 0.1};
  Range contrast_scale{0.85, 1.15};
  Range downscale_factor{0.5, 0.95};
  Range sharpen_alpha{0.2, 0.5};
  double sharpen_sigma = 1.0;
  // Chance that each of the six sub-transforms is switched on.
  double subtransform_probability = 0.5;
  Range resize_scale{0.95, 1.05};
  Range translate_fraction{-0.03, 0.03};

  static StgConfig identity() {
    StgConfig c;
    c.rgb_shift = Range::point(0.0);
    c.hue_shift = Range::point(0.0);
    c.sat_scale = Range::point(1.0);
    c.val_scale = Range::point(1.0);
    c.brightness_shift = Range::point(0.0);
    c.contrast_scale = Range::point(1.0);
    c.downscale_factor = Range::point(1.0);
    c.sharpen_alpha = Range::point(0.0);
    c.resize_scale = Range::point(1.0);
    c.translate_fraction = Range::point(0.0);
    return c;
  }

  void validate() const {
    rgb_shift.validate("stg.rgb_shift");
    hue_shift.validate("stg.hue_shift");
    sat_scale.validate("stg.saturation_scale");
    val_scale.validate("stg.value_scale");
    brightness_shift.validate("stg.brightness_shift");
    contrast_scale.validate("stg.contrast_scale");
    downscale_factor.validate("stg.downscale_factor");
    sharpen_alpha.validate("stg.sharpen_alpha");
    resize_scale.validate("stg.resize_scale");
    translate_fraction.validate("stg.translate_fraction");
    if (!(downscale_factor.lo > 0.0 && downscale_factor.hi <= 1.0)) {
      throw ValidationError("stg.downscale_factor must lie in (0, 1]");
    }
    if (!(sharpen_alpha.lo >= 0.0 && sharpen_alpha.hi <= 1.0)) {
      throw ValidationError("stg.sharpen_alpha must lie in [0, 1]");
    }
    if (!(sat_scale.lo >= 0.0 && val_scale.lo >= 0.0 && contrast_scale.lo >= 0.0)) {
      throw ValidationError("stg scale ranges must be non-negative");
    }
    if (!(resize_scale.lo > 0.0)) throw ValidationError("stg.resize_scale must be > 0");
    if (!(sharpen_sigma > 0.0)) throw ValidationError("stg.sharpen_sigma must be > 0");
    if (!(subtransform_probability >= 0.0 && subtransform_probability <= 1.0)) {
      throw ValidationError("stg.subtransform_probability must lie in [0, 1]");
    }
  }
  friend bool operator==(const StgConfig&, const StgConfig&) = default;
};

/// Parameters of procedure T plus the branch taken by the coin flip.
struct StgRecord {
  bool source_is_augmented = false;
  ColorParams color;
  FrequencyParams frequency;
  friend bool operator==(const StgRecord&, const StgRecord&) = default;
};

// Sub-transform order used for the switch coins.
enum class SubTransform : int { rgb, hue, saturation, value, brightness_contrast, frequency };
inline constexpr int sub_transform_count = 6;

/// Draws the parameters of T. Each sub-transform fires with
/// cfg.subtransform_probability; if none fires one is forced uniformly.
inline std::pair<ColorParams, FrequencyParams> sample_transform(RngStream& stream,
                                                                const StgConfig& cfg) {
  std::array<bool, sub_transform_count> on{};
  bool any = false;
  for (auto& f : on) {
    f = stream.next_unit() < cfg.subtransform_probability;
    any = any || f;
  }
  if (!any) on[static_cast<std::size_t>(stream.next_below(sub_transform_count))] = true;
  auto enabled = [&](SubTransform t) { return on[static_cast<std::size_t>(t)]; };

  ColorParams color;
  FrequencyParams freq;
  freq.sharpen_sigma = cfg.sharpen_sigma;
  if (enabled(SubTransform::rgb)) {
    for (double& s : color.rgb_shift) s = draw_uniform(stream, cfg.rgb_shift.lo, cfg.rgb_shift.hi);
  }
  if (enabled(SubTransform::hue)) {
    color.hue_shift = draw_uniform(stream, cfg.hue_shift.lo, cfg.hue_shift.hi);
  }
  if (enabled(SubTransform::saturation)) {
    color.sat_scale = draw_uniform(stream, cfg.sat_scale.lo, cfg.sat_scale.hi);
  }
  if (enabled(SubTransform::value)) {
    color.val_scale = draw_uniform(stream, cfg.val_scale.lo, cfg.val_scale.hi);
  }
  if (enabled(SubTransform::brightness_contrast)) {
    color.brightness_shift = draw_uniform(stream, cfg.brightness_shift.lo, cfg.brightness_shift.hi);
    color.contrast_scale = draw_uniform(stream, cfg.contrast_scale.lo, cfg.contrast_scale.hi);
  }
  if (enabled(SubTransform::frequency)) {
    if (stream.next_unit() < 0.5) {
      freq.mode = FrequencyMode::downscale;
      freq.downscale_factor = draw_uniform(stream, cfg.downscale_factor.lo, cfg.downscale_factor.hi);
    } else {
      freq.mode = FrequencyMode::sharpen;
      freq.sharpen_alpha = draw_uniform(stream, cfg.sharpen_alpha.lo, cfg.sharpen_alpha.hi);
    }
  }
  return {color, freq};
}

// Procedure T: color then frequency.
inline ImageTensor apply_transform(const ImageTensor& img, const ColorParams& color,
                                   const FrequencyParams& freq) {
  return frequency_transform(color_transform(img, color), freq);
}

inline StgRecord sample_source_target(RngStream& stream, const StgConfig& cfg) {
  StgRecord rec;
  rec.source_is_augmented = draw_uniform(stream, 0.0, 1.0) < 0.5;
  std::tie(rec.color, rec.frequency) = sample_transform(stream, cfg);
  return rec;
}

struct SourceTarget {
  ImageTensor source;
  ImageTensor target;
};

inline SourceTarget apply_source_target(const ImageTensor& img, const StgRecord& rec) {
  ImageTensor augmented = apply_transform(img, rec.color, rec.frequency);
  if (rec.source_is_augmented) return {std::move(augmented), img};
  return {img, std::move(augmented)};
}

struct AugmentResult {
  ImageTensor source;
  ImageTensor target;
  StgRecord record;
};

/// One coin flip decides which of (source, target) receives T; the other is
/// the input unchanged.
inline AugmentResult augment_source_target(const ImageTensor& img, RngStream& stream,
                                           const StgConfig& cfg) {
  img.validate("image");
  auto rec = sample_source_target(stream, cfg);
  auto st = apply_source_target(img, rec);
  return {std::move(st.source), std::move(st.target), rec};
}

inline ResizeTranslateParams sample_resize_translate(RngStream& stream, const StgConfig& cfg,
                                                     int height, int width) {
  ResizeTranslateParams p;
  p.height = height;
  p.width = width;
  p.u_h = draw_uniform(stream, cfg.resize_scale.lo, cfg.resize_scale.hi);
  p.u_w = draw_uniform(stream, cfg.resize_scale.lo, cfg.resize_scale.hi);
  p.v_h = draw_uniform(stream, cfg.translate_fraction.lo, cfg.translate_fraction.hi);
  p.v_w = draw_uniform(stream, cfg.translate_fraction.lo, cfg.translate_fraction.hi);
  p.validate();
  return p;
}

}  // namespace sbi_forge
