#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "sbi_forge/core/error.hpp"
#include "sbi_forge/core/rng.hpp"
#include "sbi_forge/ingest/crop.hpp"
#include "sbi_forge/mg/mask.hpp"
#include "sbi_forge/stg/augment.hpp"
#include "sbi_forge/stg/params.hpp"

namespace sbi_forge {

inline constexpr const char* recipe_version = "sbi-forge-recipe/1";

struct CropRecord {
  double margin = 0.0;
  CropRect rect;
  friend bool operator==(const CropRecord&, const CropRecord&) = default;
};

/// Every sampled value of one generation, enough to replay it bit-exactly.
struct RecipeRecord {
  std::string version = recipe_version;
  std::string key;  // manifest key, empty for in-memory generation
  std::uint64_t entry_index = 0;
  std::uint64_t sample_index = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::string input_digest;  // raster_digest of the (cropped) base image
  std::optional<CropRecord> crop;
  StgRecord stg;
  ResizeTranslateParams resize;
  MaskParams mask;

  /// Domain checks only; conformance to a config is checked by within_config().
  void validate(std::size_t landmark_count) const {
    if (version != recipe_version) {
      throw RecipeError("recipe version '" + version + "' does not match '" + recipe_version + "'");
    }
    try {
      stg.frequency.validate();
      for (double s : stg.color.rgb_shift) {
        if (!std::isfinite(s) || std::fabs(s) > 1.0) throw ParameterError("rgb shift outside [-1, 1]");
      }
      const auto& c = stg.color;
      for (double v : {c.hue_shift, c.sat_scale, c.val_scale, c.brightness_shift, c.contrast_scale}) {
        if (!std::isfinite(v)) throw ParameterError("color parameter not finite");
      }
      if (c.sat_scale < 0.0 || c.val_scale < 0.0 || c.contrast_scale < 0.0) {
        throw ParameterError("color scale is negative");
      }
      resize.validate();
      mask.validate(landmark_count);
      if (crop && !(crop->margin >= 0.0)) throw ParameterError("crop margin is negative");
    } catch (const ParameterError& ex) {
      throw RecipeError(std::string("corrupted recipe: ") + ex.what());
    }
  }

  friend bool operator==(const RecipeRecord&, const RecipeRecord&) = default;
};

namespace recipe_detail {

inline std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::uint64_t parse_hex64(const nlohmann::json& j) {
  const auto s = j.get<std::string>();
  if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) throw RecipeError("expected 0x-prefixed hex, got " + s);
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s.substr(2), &pos, 16);
  } catch (const std::exception&) {
    throw RecipeError("bad hex value " + s);
  }
  if (pos != s.size() - 2) throw RecipeError("bad hex value " + s);
  return v;
}

}  // namespace recipe_detail

/// Recipe text format: one JSON document whose "steps" array lists the
/// generation steps in execution order. u64 identifiers are 0x-hex strings,
/// reals are printed with round-trip precision.
inline nlohmann::ordered_json to_json(const RecipeRecord& r) {
  using nlohmann::ordered_json;
  using recipe_detail::hex64;
  ordered_json j;
  j["version"] = r.version;
  j["key"] = r.key;
  j["entry_index"] = r.entry_index;
  j["sample_index"] = r.sample_index;
  j["seed"] = hex64(r.seed);
  j["stream_id"] = hex64(r.stream_id);
  j["input_digest"] = r.input_digest;

  auto steps = ordered_json::array();
  if (r.crop) {
    steps.push_back({{"step", "crop"},
                     {"margin", r.crop->margin},
                     {"rect", {r.crop->rect.x0, r.crop->rect.y0, r.crop->rect.x1, r.crop->rect.y1}}});
  }
  const auto& c = r.stg.color;
  const auto& f = r.stg.frequency;
  steps.push_back(
      {{"step", "source_target"},
       {"source_is_augmented", r.stg.source_is_augmented},
       {"color",
        {{"rgb_shift", c.rgb_shift},
         {"hue_shift", c.hue_shift},
         {"saturation_scale", c.sat_scale},
         {"value_scale", c.val_scale},
         {"brightness_shift", c.brightness_shift},
         {"contrast_scale", c.contrast_scale}}},
       {"frequency",
        {{"mode", to_string(f.mode)},
         {"downscale_factor", f.downscale_factor},
         {"sharpen_alpha", f.sharpen_alpha},
         {"sharpen_sigma", f.sharpen_sigma}}}});
  const auto& p = r.resize;
  steps.push_back({{"step", "resize_translate"},
                   {"u_h", p.u_h},
                   {"u_w", p.u_w},
                   {"v_h", p.v_h},
                   {"v_w", p.v_w},
                   {"height", p.height},
                   {"width", p.width},
                   {"resized", {p.resized_height(), p.resized_width()}},
                   {"translation", {p.shift_rows(), p.shift_cols()}}});
  auto offsets = ordered_json::array();
  for (const auto& o : r.mask.landmark_offsets) offsets.push_back({o.x, o.y});
  steps.push_back({{"step", "landmark_transform"}, {"offsets", offsets}});
  steps.push_back({{"step", "convex_hull"}});
  steps.push_back({{"step", "mask_resize_translate"}});
  steps.push_back({{"step", "mask_deform"},
                   {"elastic_alpha", r.mask.elastic_alpha},
                   {"elastic_sigma", r.mask.elastic_sigma},
                   {"field_stream",
                    {{"seed", hex64(r.mask.elastic_field.seed)},
                     {"stream_id", hex64(r.mask.elastic_field.stream_id)},
                     {"tag", hex64(r.mask.elastic_field.tag)}}},
                   {"k1", r.mask.k1},
                   {"k2", r.mask.k2}});
  steps.push_back({{"step", "blend_ratio"}, {"r", r.mask.ratio}});
  steps.push_back({{"step", "blend"}});
  j["steps"] = std::move(steps);
  return j;
}

inline std::string serialize_recipe(const RecipeRecord& r) { return to_json(r).dump(2) + "\n"; }

inline RecipeRecord parse_recipe(const std::string& text) {
  using recipe_detail::parse_hex64;
  RecipeRecord r;
  try {
    const auto j = nlohmann::json::parse(text);
    r.version = j.at("version").get<std::string>();
    if (r.version != recipe_version) {
      throw RecipeError("recipe version '" + r.version + "' does not match '" + recipe_version + "'");
    }
    r.key = j.at("key").get<std::string>();
    r.entry_index = j.at("entry_index").get<std::uint64_t>();
    r.sample_index = j.at("sample_index").get<std::uint64_t>();
    r.seed = parse_hex64(j.at("seed"));
    r.stream_id = parse_hex64(j.at("stream_id"));
    r.input_digest = j.at("input_digest").get<std::string>();
    for (const auto& s : j.at("steps")) {
      const auto name = s.at("step").get<std::string>();
      if (name == "crop") {
        const auto& rect = s.at("rect");
        r.crop = CropRecord{s.at("margin").get<double>(),
                            {rect.at(0).get<int>(), rect.at(1).get<int>(), rect.at(2).get<int>(), rect.at(3).get<int>()}};
      } else if (name == "source_target") {
        r.stg.source_is_augmented = s.at("source_is_augmented").get<bool>();
        const auto& c = s.at("color");
        r.stg.color.rgb_shift = c.at("rgb_shift").get<std::array<double, 3>>();
        r.stg.color.hue_shift = c.at("hue_shift").get<double>();
        r.stg.color.sat_scale = c.at("saturation_scale").get<double>();
        r.stg.color.val_scale = c.at("value_scale").get<double>();
        r.stg.color.brightness_shift = c.at("brightness_shift").get<double>();
        r.stg.color.contrast_scale = c.at("contrast_scale").get<double>();
        const auto& f = s.at("frequency");
        r.stg.frequency.mode = frequency_mode_from_string(f.at("mode").get<std::string>());
        r.stg.frequency.downscale_factor = f.at("downscale_factor").get<double>();
        r.stg.frequency.sharpen_alpha = f.at("sharpen_alpha").get<double>();
        r.stg.frequency.sharpen_sigma = f.at("sharpen_sigma").get<double>();
      } else if (name == "resize_translate") {
        r.resize.u_h = s.at("u_h").get<double>();
        r.resize.u_w = s.at("u_w").get<double>();
        r.resize.v_h = s.at("v_h").get<double>();
        r.resize.v_w = s.at("v_w").get<double>();
        r.resize.height = s.at("height").get<int>();
        r.resize.width = s.at("width").get<int>();
      } else if (name == "landmark_transform") {
        for (const auto& o : s.at("offsets")) {
          r.mask.landmark_offsets.push_back({o.at(0).get<double>(), o.at(1).get<double>()});
        }
      } else if (name == "mask_deform") {
        r.mask.elastic_alpha = s.at("elastic_alpha").get<double>();
        r.mask.elastic_sigma = s.at("elastic_sigma").get<double>();
        const auto& fs = s.at("field_stream");
        r.mask.elastic_field = {parse_hex64(fs.at("seed")), parse_hex64(fs.at("stream_id")), parse_hex64(fs.at("tag"))};
        r.mask.k1 = s.at("k1").get<int>();
        r.mask.k2 = s.at("k2").get<int>();
      } else if (name == "blend_ratio") {
        r.mask.ratio = s.at("r").get<double>();
      } else if (name != "convex_hull" && name != "mask_resize_translate" && name != "blend") {
        throw RecipeError("unknown recipe step '" + name + "'");
      }
    }
  } catch (const nlohmann::json::exception& ex) {
    throw RecipeError(std::string("malformed recipe: ") + ex.what());
  } catch (const ParameterError& ex) {
    throw RecipeError(std::string("malformed recipe: ") + ex.what());
  }
  return r;
}

}  // namespace sbi_forge
