#pragma once

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sbi_forge/core/error.hpp"
#include "sbi_forge/core/range.hpp"
#include "sbi_forge/ingest/crop.hpp"
#include "sbi_forge/mg/mask.hpp"
#include "sbi_forge/stg/augment.hpp"

namespace sbi_forge {

inline constexpr int config_schema_version = 1;

/// Everything the pipeline samples from. Serialized as YAML:
///
///   schema_version: 1
///   landmark_count: 81
///   stg:    {rgb_shift: [lo, hi], hue_shift: [lo, hi], ...}
///   mg:     {landmark_jitter: 0.03, elastic_alpha: [0, 6], ...}
///   crop:   {train_margin: [0.04, 0.2], inference_margin: 0.125, margin_mode: per_side}
///   output: {png_compression: 3}
///
/// Omitted keys keep their defaults; unknown keys are rejected.
struct PipelineConfig {
  std::size_t landmark_count = Landmarks::default_count;  // 0 = any count >= 3
  StgConfig stg;
  MaskConfig mask;
  CropConfig crop;
  int png_compression = 3;

  static PipelineConfig identity() {
    PipelineConfig c;
    c.stg = StgConfig::identity();
    c.mask = MaskConfig::identity();
    return c;
  }

  void validate() const {
    stg.validate();
    mask.validate();
    crop.validate();
    if (png_compression < 0 || png_compression > 9) {
      throw ValidationError("output.png_compression must lie in [0, 9]");
    }
  }
  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

namespace config_detail {

inline Range read_range(const YAML::Node& n, const std::string& name) {
  if (!n.IsSequence() || n.size() != 2) throw ValidationError(name + ": expected [min, max]");
  Range r{n[0].as<double>(), n[1].as<double>()};
  r.validate(name);
  return r;
}

using Setter = std::function<void(PipelineConfig&, const YAML::Node&, const std::string&)>;

inline Setter range_field(Range StgConfig::*f) {
  return [f](PipelineConfig& c, const YAML::Node& n, const std::string& name) { c.stg.*f = read_range(n, name); };
}
inline Setter range_field(Range MaskConfig::*f) {
  return [f](PipelineConfig& c, const YAML::Node& n, const std::string& name) { c.mask.*f = read_range(n, name); };
}

inline const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> s{
      {"stg",
       {{"rgb_shift", range_field(&StgConfig::rgb_shift)},
        {"hue_shift", range_field(&StgConfig::hue_shift)},
        {"saturation_scale", range_field(&StgConfig::sat_scale)},
        {"value_scale", range_field(&StgConfig::val_scale)},
        {"brightness_shift", range_field(&StgConfig::brightness_shift)},
        {"contrast_scale", range_field(&StgConfig::contrast_scale)},
        {"downscale_factor", range_field(&StgConfig::downscale_factor)},
        {"sharpen_alpha", range_field(&StgConfig::sharpen_alpha)},
        {"sharpen_sigma", [](PipelineConfig& c, const YAML::Node& n, const std::string&) { c.stg.sharpen_sigma = n.as<double>(); }},
        {"subtransform_probability", [](PipelineConfig& c, const YAML::Node& n, const std::string&) { c.stg.subtransform_probability = n.as<double>(); }},
        {"resize_scale", range_field(&StgConfig::resize_scale)},
        {"translate_fraction", range_field(&StgConfig::translate_fraction)}}},
      {"mg",
       {{"landmark_jitter", [](PipelineConfig& c, const YAML::Node& n, const std::string&) { c.mask.landmark_jitter = n.as<double>(); }},
        {"elastic_alpha", range_field(&MaskConfig::elastic_alpha)},
        {"elastic_sigma", range_field(&MaskConfig::elastic_sigma)},
        {"kernel_fraction", range_field(&MaskConfig::kernel_fraction)},
        {"ratio_choices", [](PipelineConfig& c, const YAML::Node& n, const std::string& name) {
           if (!n.IsSequence()) throw ValidationError(name + ": expected a list");
           c.mask.ratio_choices = n.as<std::vector<double>>();
         }}}},
      {"crop",
       {{"train_margin", [](PipelineConfig& c, const YAML::Node& n, const std::string& name) { c.crop.train_margin = read_range(n, name); }},
        {"inference_margin", [](PipelineConfig& c, const YAML::Node& n, const std::string&) { c.crop.inference_margin = n.as<double>(); }},
        {"margin_mode", [](PipelineConfig& c, const YAML::Node& n, const std::string&) { c.crop.margin_mode = margin_mode_from_string(n.as<std::string>()); }}}},
      {"output",
       {{"png_compression", [](PipelineConfig& c, const YAML::Node& n, const std::string&) { c.png_compression = n.as<int>(); }}}},
  };
  return s;
}

}  // namespace config_detail

inline PipelineConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& ex) {
    throw ValidationError(std::string("config is not valid YAML: ") + ex.what());
  }
  if (!root.IsMap()) throw ValidationError("config must be a key-value mapping");
  if (!root["schema_version"]) throw ValidationError("config: missing schema_version");

  PipelineConfig cfg;
  const auto& schema = config_detail::schema();
  try {
    for (const auto& kv : root) {
      const auto key = kv.first.as<std::string>();
      if (key == "schema_version") {
        if (kv.second.as<int>() != config_schema_version) {
          throw ValidationError("config: unsupported schema_version " + kv.second.as<std::string>());
        }
      } else if (key == "landmark_count") {
        const int n = kv.second.as<int>();
        if (n < 0) throw ValidationError("landmark_count must be >= 0");
        cfg.landmark_count = static_cast<std::size_t>(n);
      } else if (auto section = schema.find(key); section != schema.end()) {
        if (!kv.second.IsMap()) throw ValidationError("config: " + key + " must be a mapping");
        for (const auto& field : kv.second) {
          const auto name = field.first.as<std::string>();
          const auto setter = section->second.find(name);
          if (setter == section->second.end()) {
            throw ValidationError("config: unknown key '" + key + "." + name + "'");
          }
          setter->second(cfg, field.second, key + "." + name);
        }
      } else {
        throw ValidationError("config: unknown key '" + key + "'");
      }
    }
  } catch (const YAML::Exception& ex) {
    throw ValidationError(std::string("config: bad value: ") + ex.what());
  }
  cfg.validate();
  return cfg;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

inline std::string dump_config(const PipelineConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  auto range = [&](const char* k, const Range& r) {
    out << YAML::Key << k << YAML::Value << YAML::Flow << YAML::BeginSeq << r.lo << r.hi << YAML::EndSeq;
  };
  out << YAML::BeginMap;
  out << YAML::Key << "schema_version" << YAML::Value << config_schema_version;
  out << YAML::Key << "landmark_count" << YAML::Value << c.landmark_count;
  out << YAML::Key << "stg" << YAML::Value << YAML::BeginMap;
  range("rgb_shift", c.stg.rgb_shift);
  range("hue_shift", c.stg.hue_shift);
  range("saturation_scale", c.stg.sat_scale);
  range("value_scale", c.stg.val_scale);
  range("brightness_shift", c.stg.brightness_shift);
  range("contrast_scale", c.stg.contrast_scale);
  range("downscale_factor", c.stg.downscale_factor);
  range("sharpen_alpha", c.stg.sharpen_alpha);
  out << YAML::Key << "sharpen_sigma" << YAML::Value << c.stg.sharpen_sigma;
  out << YAML::Key << "subtransform_probability" << YAML::Value << c.stg.subtransform_probability;
  range("resize_scale", c.stg.resize_scale);
  range("translate_fraction", c.stg.translate_fraction);
  out << YAML::EndMap;
  out << YAML::Key << "mg" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "landmark_jitter" << YAML::Value << c.mask.landmark_jitter;
  range("elastic_alpha", c.mask.elastic_alpha);
  range("elastic_sigma", c.mask.elastic_sigma);
  range("kernel_fraction", c.mask.kernel_fraction);
  out << YAML::Key << "ratio_choices" << YAML::Value << YAML::Flow << c.mask.ratio_choices;
  out << YAML::EndMap;
  out << YAML::Key << "crop" << YAML::Value << YAML::BeginMap;
  range("train_margin", c.crop.train_margin);
  out << YAML::Key << "inference_margin" << YAML::Value << c.crop.inference_margin;
  out << YAML::Key << "margin_mode" << YAML::Value << to_string(c.crop.margin_mode);
  out << YAML::EndMap;
  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "png_compression" << YAML::Value << c.png_compression;
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace sbi_forge
