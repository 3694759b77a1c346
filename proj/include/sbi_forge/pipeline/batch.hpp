#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "sbi_forge/core/rng.hpp"
#include "sbi_forge/ingest/crop.hpp"
#include "sbi_forge/ingest/image_io.hpp"
#include "sbi_forge/ingest/manifest.hpp"
#include "sbi_forge/pipeline/config.hpp"
#include "sbi_forge/pipeline/pipeline.hpp"

namespace sbi_forge {

struct BatchOptions {
  std::uint64_t base_seed = 42;
  std::uint64_t samples_per_image = 1;
  unsigned workers = 1;
  CropMode mode = CropMode::train;
};

struct SampleOutcome {
  std::size_t entry_index = 0;
  std::uint64_t sample_index = 0;
  std::string key;
  bool ok = false;
  std::string error;  // "<key>: <reason>" when !ok
};

using ImageLoader = std::function<ImageTensor(const ManifestEntry&)>;
// Called concurrently from workers; must be safe for distinct (entry, sample).
using SampleSink = std::function<void(std::size_t entry_index, const ManifestEntry&, const SbiSample&)>;

inline ImageLoader file_loader(const Manifest& m) {
  return [base = m.base_dir](const ManifestEntry& e) {
    const std::filesystem::path p(e.image_path);
    return load_image(p.is_absolute() ? p : base / p);
  };
}

/// Crop (margin from the crop_margin sub-stream), move landmarks into the
/// crop frame, then run the generator with stream (base_seed, stream_id).
inline SbiSample generate_entry_sample(const ManifestEntry& entry, std::size_t entry_index,
                                       std::uint64_t sample_index, const ImageTensor& image,
                                       const PipelineConfig& cfg, const BatchOptions& opt) {
  const RngStream stream(opt.base_seed, make_stream_id(entry_index, sample_index));
  auto margin_stream = stream.child(StreamTag::crop_margin);
  const double margin = sample_margin(margin_stream, opt.mode, cfg.crop);
  auto crop = crop_face(image, entry.bbox, margin, cfg.crop.margin_mode);
  const auto landmarks = to_crop_frame(entry.landmarks, crop.rect);

  auto recipe = sample_recipe(crop.image.height(), crop.image.width(), landmarks, cfg, stream);
  recipe.key = entry.key;
  recipe.entry_index = entry_index;
  recipe.sample_index = sample_index;
  recipe.input_digest = raster_digest(crop.image);
  recipe.crop = CropRecord{margin, crop.rect};
  return render_sample(crop.image, landmarks, std::move(recipe));
}

/// Replays a recipe against the full-frame image of its manifest entry.
inline SbiSample replay_entry(const RecipeRecord& recipe, const ManifestEntry& entry,
                              const ImageTensor& image, const PipelineConfig& cfg) {
  if (!recipe.crop) throw RecipeError("recipe has no crop step");
  const auto rect = crop_rect(image.height(), image.width(), entry.bbox, recipe.crop->margin, cfg.crop.margin_mode);
  if (rect != recipe.crop->rect) throw RecipeError("recorded crop rectangle does not match the manifest entry");
  return replay(recipe, crop_image(image, rect), to_crop_frame(entry.landmarks, rect));
}

/// Generates samples_per_image samples per entry across `workers` threads.
/// Each entry's output depends only on (base_seed, entry index, sample
/// index), so the result set is the same for every worker count. Per-sample
/// failures are recorded and skipped. Outcomes come back ordered by
/// (entry, sample).
inline std::vector<SampleOutcome> generate_batch(const std::vector<ManifestEntry>& entries,
                                                 const PipelineConfig& cfg, const BatchOptions& opt,
                                                 const ImageLoader& loader, const SampleSink& sink) {
  cfg.validate();
  if (opt.workers < 1) throw ParameterError("worker count must be >= 1");
  const std::uint64_t k = opt.samples_per_image;
  std::vector<SampleOutcome> outcomes(entries.size() * k);

  auto run_entry = [&](std::size_t ei) {
    const auto& entry = entries[ei];
    std::string load_error;
    ImageTensor image;
    try {
      image = loader(entry);
    } catch (const std::exception& ex) {
      load_error = ex.what();
    }
    for (std::uint64_t si = 0; si < k; ++si) {
      auto& out = outcomes[ei * k + si];
      out.entry_index = ei;
      out.sample_index = si;
      out.key = entry.key;
      if (!load_error.empty()) {
        out.error = entry.key + ": " + load_error;
        continue;
      }
      try {
        const auto sample = generate_entry_sample(entry, ei, si, image, cfg, opt);
        sink(ei, entry, sample);
        out.ok = true;
      } catch (const DegenerateHullError& ex) {
        out.error = entry.key + ": degenerate hull (" + ex.what() + ")";
      } catch (const std::exception& ex) {
        out.error = entry.key + ": " + ex.what();
      }
    }
  };

  const unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(opt.workers, std::max<std::size_t>(1, entries.size())));
  if (n_workers == 1) {
    for (std::size_t i = 0; i < entries.size(); ++i) run_entry(i);
    return outcomes;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < entries.size(); i = next.fetch_add(1)) run_entry(i);
      });
    }
  }
  return outcomes;
}

}  // namespace sbi_forge
