#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <array>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sbi_forge/core/rng.hpp"
#include "sbi_forge/ingest/crop.hpp"
#include "sbi_forge/pipeline/config.hpp"
#include "sbi_forge/pipeline/pipeline.hpp"

namespace sbi_forge {

struct DiscreteStat {
  std::string name;
  std::string value;
  std::uint64_t count = 0;
  std::uint64_t trials = 0;
  double expected = 0.0;
  // Reported but never flagged: sub-transform switches are read back from
  // the sampled values, so a collapsed range looks switched off.
  bool informational = false;

  double frequency() const { return trials ? static_cast<double>(count) / static_cast<double>(trials) : 0.0; }
  double sigma() const { return trials ? std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials)) : 0.0; }
  bool flagged() const {
    const double s = sigma();
    return s > 0.0 ? std::fabs(frequency() - expected) > 3.0 * s : frequency() != expected;
  }
};

struct ContinuousStat {
  std::string name;
  Range range;
  std::uint64_t n = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double v) {
    ++n;
    min = std::min(min, v);
    max = std::max(max, v);
    sum += v;
    sum_sq += v * v;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double stddev() const {
    if (n < 2) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, sum_sq / static_cast<double>(n) - m * m));
  }
  double coverage() const {
    if (n == 0) return 0.0;
    return range.is_point() ? 1.0 : (max - min) / (range.hi - range.lo);
  }
  bool out_of_range() const { return n > 0 && (min < range.lo || max > range.hi); }
  bool zero_variance() const { return n > 0 && min == max; }
  // Mean more than 3 standard errors away from the uniform midpoint.
  bool flagged() const {
    if (n == 0 || range.is_point()) return out_of_range();
    const double se = (range.hi - range.lo) / std::sqrt(12.0 * static_cast<double>(n));
    return out_of_range() || std::fabs(mean() - (range.lo + range.hi) / 2.0) > 3.0 * se;
  }
};

struct AuditReport {
  std::uint64_t draws = 0;
  std::vector<DiscreteStat> discrete;
  std::vector<ContinuousStat> continuous;

  const DiscreteStat* find(const std::string& name, const std::string& value) const {
    for (const auto& d : discrete) {
      if (d.name == name && d.value == value) return &d;
    }
    return nullptr;
  }
  const ContinuousStat* find(const std::string& name) const {
    for (const auto& c : continuous) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
  bool any_flagged() const {
    for (const auto& d : discrete) if (d.flagged() && !d.informational) return true;
    for (const auto& c : continuous) if (c.flagged()) return true;
    return false;
  }
};

inline std::string format_ratio(double r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

/// 81 points on an ellipse centred in a size x size frame, for parameter
/// audits that need a plausible face geometry but no pixels.
inline Landmarks synthetic_face_landmarks(int size, std::size_t count = Landmarks::default_count) {
  Landmarks lm;
  const double cx = size / 2.0, cy = size / 2.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
    lm.points.push_back({cx + 0.3 * size * std::cos(t), cy + 0.38 * size * std::sin(t)});
  }
  return lm;
}

/// Samples the whole parameter space n times (no pixels touched) and
/// compares empirical distributions with the configured ones. Draw i uses
/// the stream of (seed, entry i, sample 0), as a batch run would.
inline AuditReport audit_parameters(const PipelineConfig& cfg, std::uint64_t seed, std::uint64_t n,
                                    int frame_size = 256) {
  cfg.validate();
  const auto landmarks = synthetic_face_landmarks(frame_size);
  AuditReport rep;
  rep.draws = n;

  std::map<std::string, std::uint64_t> ratio_counts;
  std::map<double, double> ratio_expected;
  for (double r : cfg.mask.ratio_choices) ratio_expected[r] += 1.0 / static_cast<double>(cfg.mask.ratio_choices.size());
  std::uint64_t source_aug = 0;

  const double p = cfg.stg.subtransform_probability;
  const double p_on = p + std::pow(1.0 - p, sub_transform_count) / sub_transform_count;
  const char* sub_names[] = {"rgb", "hue", "saturation", "value", "brightness_contrast", "frequency"};
  std::array<std::uint64_t, sub_transform_count> sub_counts{};

  auto cont = [&](const std::string& name, const Range& r) {
    rep.continuous.push_back({name, r});
    return rep.continuous.size() - 1;
  };
  const auto i_rgb = cont("rgb_shift", cfg.stg.rgb_shift);
  const auto i_hue = cont("hue_shift", cfg.stg.hue_shift);
  const auto i_sat = cont("saturation_scale", cfg.stg.sat_scale);
  const auto i_val = cont("value_scale", cfg.stg.val_scale);
  const auto i_bri = cont("brightness_shift", cfg.stg.brightness_shift);
  const auto i_con = cont("contrast_scale", cfg.stg.contrast_scale);
  const auto i_down = cont("downscale_factor", cfg.stg.downscale_factor);
  const auto i_sharp = cont("sharpen_alpha", cfg.stg.sharpen_alpha);
  const auto i_uh = cont("u_h", cfg.stg.resize_scale);
  const auto i_uw = cont("u_w", cfg.stg.resize_scale);
  const auto i_vh = cont("v_h", cfg.stg.translate_fraction);
  const auto i_vw = cont("v_w", cfg.stg.translate_fraction);
  const auto i_jit = cont("landmark_offset_fraction", Range{-cfg.mask.landmark_jitter, cfg.mask.landmark_jitter});
  const auto i_ea = cont("elastic_alpha", cfg.mask.elastic_alpha);
  const auto i_es = cont("elastic_sigma", cfg.mask.elastic_sigma);
  const auto i_margin = cont("crop_margin", cfg.crop.train_margin);
  const double diag = bounding_box(landmarks.points).diagonal();

  for (std::uint64_t i = 0; i < n; ++i) {
    const RngStream stream(seed, make_stream_id(i, 0));
    auto ms = stream.child(StreamTag::crop_margin);
    rep.continuous[i_margin].add(sample_margin(ms, CropMode::train, cfg.crop));
    const auto r = sample_recipe(frame_size, frame_size, landmarks, cfg, stream);

    ++ratio_counts[format_ratio(r.mask.ratio)];
    source_aug += r.stg.source_is_augmented ? 1 : 0;
    const auto& c = r.stg.color;
    const auto& f = r.stg.frequency;
    const bool on[] = {!c.rgb_is_identity(), c.hue_shift != 0.0, c.sat_scale != 1.0, c.val_scale != 1.0,
                       !c.brightness_contrast_is_identity(), f.mode != FrequencyMode::none};
    for (int t = 0; t < sub_transform_count; ++t) sub_counts[static_cast<std::size_t>(t)] += on[t] ? 1 : 0;
    if (on[0]) for (double s : c.rgb_shift) rep.continuous[i_rgb].add(s);
    if (on[1]) rep.continuous[i_hue].add(c.hue_shift);
    if (on[2]) rep.continuous[i_sat].add(c.sat_scale);
    if (on[3]) rep.continuous[i_val].add(c.val_scale);
    if (on[4]) {
      rep.continuous[i_bri].add(c.brightness_shift);
      rep.continuous[i_con].add(c.contrast_scale);
    }
    if (f.mode == FrequencyMode::downscale) rep.continuous[i_down].add(f.downscale_factor);
    if (f.mode == FrequencyMode::sharpen) rep.continuous[i_sharp].add(f.sharpen_alpha);
    rep.continuous[i_uh].add(r.resize.u_h);
    rep.continuous[i_uw].add(r.resize.u_w);
    rep.continuous[i_vh].add(r.resize.v_h);
    rep.continuous[i_vw].add(r.resize.v_w);
    for (const auto& o : r.mask.landmark_offsets) {
      rep.continuous[i_jit].add(diag > 0.0 ? o.x / diag : 0.0);
      rep.continuous[i_jit].add(diag > 0.0 ? o.y / diag : 0.0);
    }
    rep.continuous[i_ea].add(r.mask.elastic_alpha);
    rep.continuous[i_es].add(r.mask.elastic_sigma);
  }

  for (const auto& [value, expected] : ratio_expected) {
    const auto label = format_ratio(value);
    rep.discrete.push_back({"r", label, ratio_counts[label], n, expected});
  }
  rep.discrete.push_back({"source_augmented", "true", source_aug, n, 0.5});
  for (int t = 0; t < sub_transform_count; ++t) {
    rep.discrete.push_back(
        {std::string("subtransform.") + sub_names[t], "on", sub_counts[static_cast<std::size_t>(t)], n, p_on, true});
  }
  return rep;
}

inline std::string format_audit(const AuditReport& rep) {
  std::ostringstream os;
  os << std::setprecision(6);
  os << "parameter audit: " << rep.draws << " draws\n";
  os << "discrete:\n";
  for (const auto& d : rep.discrete) {
    os << "  " << std::left << std::setw(34) << (d.name + "=" + d.value) << std::right << " freq " << std::setw(9)
       << d.frequency() << "  expected " << std::setw(9) << d.expected << "  3sigma " << std::setw(9) << 3 * d.sigma();
    if (d.flagged()) os << (d.informational ? "  info: differs (collapsed ranges read as off)" : "  FLAG: beyond 3 sigma");
    os << '\n';
  }
  os << "continuous:\n";
  for (const auto& c : rep.continuous) {
    os << "  " << std::left << std::setw(26) << c.name << std::right << " range [" << c.range.lo << ", " << c.range.hi
       << "]  n " << c.n;
    if (c.n > 0) {
      os << "  min " << c.min << "  max " << c.max << "  mean " << c.mean() << "  sd " << c.stddev() << "  coverage "
         << c.coverage();
    }
    if (c.zero_variance()) os << "  info: zero variance";
    if (c.flagged()) os << "  FLAG";
    os << '\n';
  }
  os << (rep.any_flagged() ? "result: deviations flagged\n" : "result: no deviations beyond 3 sigma\n");
  return os.str();
}

}  // namespace sbi_forge
