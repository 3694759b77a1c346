#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sbi_forge/core/blend.hpp"
#include "sbi_forge/core/landmarks.hpp"
#include "sbi_forge/core/raster.hpp"
#include "sbi_forge/core/rng.hpp"
#include "sbi_forge/ingest/digest.hpp"
#include "sbi_forge/mg/mask.hpp"
#include "sbi_forge/pipeline/config.hpp"
#include "sbi_forge/pipeline/recipe.hpp"
#include "sbi_forge/stg/augment.hpp"
#include "sbi_forge/stg/resize_translate.hpp"

namespace sbi_forge {

/// One self-blended training pair. The Real member is the target image
/// (which may carry the augmentation), never the untouched base image.
struct SbiSample {
  ImageTensor real_image;  // I_t, labeled Real
  ImageTensor fake_image;  // I_SB, labeled Fake
  ImageTensor source;      // I_s after resize/translate
  BlendMask mask;          // M with r applied
  RecipeRecord recipe;
  bool provenance_match = true;  // replay input digest matched the recorded one

  friend bool operator==(const SbiSample&, const SbiSample&) = default;
};

/// Draws every parameter of one generation without touching pixels.
/// Sub-streams are derived from `stream` by fixed tags, so each step's
/// draws are independent of how many draws the others make.
inline RecipeRecord sample_recipe(int height, int width, const Landmarks& landmarks,
                                  const PipelineConfig& cfg, const RngStream& stream) {
  RecipeRecord r;
  r.seed = stream.seed();
  r.stream_id = stream.stream_id();
  auto st_stream = stream.child(StreamTag::source_target);
  r.stg = sample_source_target(st_stream, cfg.stg);
  auto rt_stream = stream.child(StreamTag::resize_translate);
  r.resize = sample_resize_translate(rt_stream, cfg.stg, height, width);
  r.mask = sample_mask_params(landmarks, cfg.mask, stream);
  return r;
}

/// Applies a recipe in the fixed step order: source/target split, resize
/// and translate of the source, landmark transform, hull, the same
/// resize/translate on the mask, mask deformation, ratio, blend.
inline SbiSample render_sample(const ImageTensor& img, const Landmarks& landmarks, RecipeRecord recipe) {
  img.validate("image");
  landmarks.validate();
  auto st = apply_source_target(img, recipe.stg);
  ImageTensor source = resize_translate(st.source, recipe.resize);
  BlendMask mask = render_mask(landmarks, img.height(), img.width(), recipe.mask, recipe.resize);
  ImageTensor fake = blend(source, st.target, mask);
  return {std::move(st.target), std::move(fake), std::move(source), std::move(mask), std::move(recipe), true};
}

inline SbiSample generate_sbi(const ImageTensor& img, const Landmarks& landmarks,
                              const PipelineConfig& cfg, const RngStream& stream) {
  img.validate("image");
  landmarks.validate();
  auto recipe = sample_recipe(img.height(), img.width(), landmarks, cfg, stream);
  recipe.input_digest = raster_digest(img);
  return render_sample(img, landmarks, std::move(recipe));
}

/// Re-applies a recorded recipe. A different input image still runs;
/// provenance_match reports whether its digest matches the recorded one.
inline SbiSample replay(const RecipeRecord& recipe, const ImageTensor& img, const Landmarks& landmarks) {
  recipe.validate(landmarks.size());
  if (!img.same_shape(recipe.resize.height, recipe.resize.width)) {
    throw RecipeError("recipe was recorded for a " + std::to_string(recipe.resize.height) + "x" +
                      std::to_string(recipe.resize.width) + " image");
  }
  const bool match = raster_digest(img) == recipe.input_digest;
  auto sample = render_sample(img, landmarks, recipe);
  sample.provenance_match = match;
  return sample;
}

/// One message per recorded value outside the configured sampling ranges.
inline std::vector<std::string> within_config(const RecipeRecord& r, const PipelineConfig& cfg) {
  std::vector<std::string> out;
  auto check = [&](const char* name, double v, const Range& range, bool applies = true) {
    if (applies && !range.contains(v)) out.push_back(std::string(name) + " = " + std::to_string(v) + " outside configured range");
  };
  const auto& c = r.stg.color;
  for (double s : c.rgb_shift) check("rgb_shift", s, cfg.stg.rgb_shift, s != 0.0);
  check("hue_shift", c.hue_shift, cfg.stg.hue_shift, c.hue_shift != 0.0);
  check("saturation_scale", c.sat_scale, cfg.stg.sat_scale, c.sat_scale != 1.0);
  check("value_scale", c.val_scale, cfg.stg.val_scale, c.val_scale != 1.0);
  check("brightness_shift", c.brightness_shift, cfg.stg.brightness_shift, c.brightness_shift != 0.0);
  check("contrast_scale", c.contrast_scale, cfg.stg.contrast_scale, c.contrast_scale != 1.0);
  const auto& f = r.stg.frequency;
  check("downscale_factor", f.downscale_factor, cfg.stg.downscale_factor, f.mode == FrequencyMode::downscale);
  check("sharpen_alpha", f.sharpen_alpha, cfg.stg.sharpen_alpha, f.mode == FrequencyMode::sharpen);
  check("u_h", r.resize.u_h, cfg.stg.resize_scale);
  check("u_w", r.resize.u_w, cfg.stg.resize_scale);
  check("v_h", r.resize.v_h, cfg.stg.translate_fraction);
  check("v_w", r.resize.v_w, cfg.stg.translate_fraction);
  check("elastic_alpha", r.mask.elastic_alpha, cfg.mask.elastic_alpha);
  check("elastic_sigma", r.mask.elastic_sigma, cfg.mask.elastic_sigma);
  if (std::ranges::find(cfg.mask.ratio_choices, r.mask.ratio) == cfg.mask.ratio_choices.end()) {
    out.push_back("r = " + std::to_string(r.mask.ratio) + " is not a configured ratio choice");
  }
  if (r.crop) {
    const bool ok = r.crop->margin == cfg.crop.inference_margin || cfg.crop.train_margin.contains(r.crop->margin);
    if (!ok) out.push_back("crop margin " + std::to_string(r.crop->margin) + " outside configured range");
  }
  return out;
}

/// Machine-checks one sample: mask range, the blend equation at mask = 0 and mask = r,
/// and that the Real member is the target. `base` is the image the sample was
/// generated from. Returns one message per violation.
inline std::vector<std::string> check_sample_invariants(const SbiSample& s, const ImageTensor& base) {
  std::vector<std::string> issues;
  const double r = s.mask.ratio();
  if (!(r > 0.0 && r <= 1.0)) issues.push_back("mask ratio outside (0, 1]");
  for (float v : s.mask.data()) {
    if (!(v >= 0.0f && v <= r)) {
      issues.push_back("mask value outside [0, r]");
      break;
    }
  }
  if (s.mask.support_area() > 0 && s.mask.max_value() != static_cast<float>(r)) {
    issues.push_back("mask maximum differs from r");
  }
  const auto m = s.mask.data();
  const auto fake = s.fake_image.data();
  const auto real = s.real_image.data();
  const auto src = s.source.data();
  if (fake.size() != real.size() || src.size() != real.size() || m.size() * 3 != real.size()) {
    issues.push_back("sample rasters differ in shape");
    return issues;
  }
  bool zero_ok = true, full_ok = true;
  for (std::size_t p = 0; p < m.size(); ++p) {
    for (std::size_t c = 0; c < 3; ++c) {
      const std::size_t i = p * 3 + c;
      if (m[p] == 0.0f && fake[i] != real[i]) zero_ok = false;
      if (m[p] == static_cast<float>(r) &&
          std::fabs(fake[i] - (r * src[i] + (1.0 - r) * real[i])) > 1e-7) {
        full_ok = false;
      }
    }
  }
  if (!zero_ok) issues.push_back("fake differs from target where mask = 0");
  if (!full_ok) issues.push_back("fake differs from r*source + (1-r)*target where mask = r");
  if (!s.recipe.stg.source_is_augmented) {
    const auto target = apply_transform(base, s.recipe.stg.color, s.recipe.stg.frequency);
    if (!(target == s.real_image)) issues.push_back("real image is not the augmented target");
  } else if (!(base == s.real_image)) {
    issues.push_back("real image is not the target (base image)");
  }
  return issues;
}

}  // namespace sbi_forge
