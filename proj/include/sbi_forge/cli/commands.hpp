#pragma once

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sbi_forge/core/filters.hpp"
#include "sbi_forge/ingest/digest.hpp"
#include "sbi_forge/ingest/image_io.hpp"
#include "sbi_forge/ingest/manifest.hpp"
#include "sbi_forge/ingest/writer.hpp"
#include "sbi_forge/pipeline/audit.hpp"
#include "sbi_forge/pipeline/batch.hpp"
#include "sbi_forge/pipeline/config.hpp"
#include "sbi_forge/scoring/score_file.hpp"

namespace sbi_forge::cli {

namespace fs = std::filesystem;

// Stable exit-code contract.
inline constexpr int exit_ok = 0;
inline constexpr int exit_fatal = 1;
inline constexpr int exit_verify_failed = 2;

// Files every generate run leaves next to the samples.
inline constexpr const char* index_file = "index.tsv";
inline constexpr const char* run_file = "run.json";
inline constexpr const char* manifest_copy = "manifest.jsonl";
inline constexpr const char* config_copy = "config.yaml";
inline constexpr const char* skip_file = "skipped.tsv";

inline PipelineConfig load_config_or_default(const std::optional<fs::path>& path) {
  return path ? load_config(*path) : PipelineConfig{};
}

inline std::string read_text(const fs::path& p) {
  const auto b = read_file(p);
  return std::string(b.begin(), b.end());
}

inline void write_text(const fs::path& p, const std::string& s) { write_file(p, Bytes(s.begin(), s.end())); }

// ---------------------------------------------------------------- generate

struct GenerateOptions {
  fs::path manifest;
  std::optional<fs::path> config;
  fs::path out_dir;
  std::uint64_t seed = 42;
  std::uint64_t samples_per_image = 1;
  unsigned workers = 1;
  bool strict = false;
  std::optional<fs::path> summary;
  CropMode mode = CropMode::train;
};

struct GenerateSummary {
  std::uint64_t ok = 0;
  std::uint64_t skipped = 0;
  std::vector<SampleOutcome> skips;
  double wall_seconds = 0.0;
  std::string index_digest;
  int exit_code = exit_ok;
  std::string fatal;
};

inline nlohmann::ordered_json to_json(const GenerateSummary& s, const GenerateOptions& o) {
  nlohmann::ordered_json j;
  j["ok"] = s.ok;
  j["skipped"] = s.skipped;
  auto skips = nlohmann::ordered_json::array();
  for (const auto& k : s.skips) skips.push_back({{"key", k.key}, {"sample_index", k.sample_index}, {"reason", k.error}});
  j["skips"] = skips;
  j["wall_seconds"] = s.wall_seconds;
  j["samples_per_second"] = s.wall_seconds > 0 ? static_cast<double>(s.ok) / s.wall_seconds : 0.0;
  j["workers"] = o.workers;
  j["index_digest"] = s.index_digest;
  j["exit_code"] = s.exit_code;
  if (!s.fatal.empty()) j["fatal"] = s.fatal;
  return j;
}

/// Batch generation into out_dir: samples, index.tsv, run.json, a resolved
/// copy of the manifest and the effective config.
inline GenerateSummary run_generate(const GenerateOptions& o, std::ostream& log) {
  GenerateSummary sum;
  const auto t0 = std::chrono::steady_clock::now();
  auto finish = [&] {
    sum.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.summary) {
      try {
        write_text(*o.summary, to_json(sum, o).dump(2) + "\n");
      } catch (const std::exception& ex) {
        log << "warning: cannot write summary: " << ex.what() << '\n';
      }
    }
    return sum;
  };

  PipelineConfig cfg;
  Manifest manifest;
  try {
    cfg = load_config_or_default(o.config);
    manifest = parse_manifest(o.manifest, cfg.landmark_count);
    fs::create_directories(o.out_dir);
  } catch (const std::exception& ex) {
    sum.fatal = ex.what();
    sum.exit_code = exit_fatal;
    log << "fatal: " << ex.what() << '\n';
    return finish();
  }

  const auto& entries = manifest.entries;
  const std::uint64_t k = o.samples_per_image;
  std::vector<std::vector<IndexLine>> slots(entries.size() * k);
  BatchOptions bo{o.seed, k, std::max(1u, o.workers), o.mode};
  const auto sink = [&](std::size_t ei, const ManifestEntry& e, const SbiSample& s) {
    slots[ei * k + s.recipe.sample_index] = write_sample(s, o.out_dir, e.key, s.recipe.sample_index, cfg.png_compression);
  };
  const auto outcomes = generate_batch(entries, cfg, bo, file_loader(manifest), sink);

  std::string index;
  std::string skipped;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& out = outcomes[i];
    if (out.ok) {
      ++sum.ok;
      for (const auto& l : slots[i]) index += format_index_line(l) + '\n';
    } else {
      ++sum.skipped;
      sum.skips.push_back(out);
      skipped += out.key + '\t' + std::to_string(out.sample_index) + '\t' + out.error + '\n';
      log << "skip: " << out.error << '\n';
    }
  }

  std::vector<ManifestEntry> resolved = entries;
  for (auto& e : resolved) e.image_path = fs::absolute(manifest.resolve(e)).lexically_normal().string();
  nlohmann::ordered_json run;
  run["tool"] = "sbi-forge";
  run["recipe_version"] = recipe_version;
  run["seed"] = o.seed;
  run["samples_per_image"] = k;
  run["mode"] = to_string(o.mode);
  run["entries"] = entries.size();
  run["ok"] = sum.ok;
  run["skipped"] = sum.skipped;
  try {
    write_text(o.out_dir / index_file, index);
    write_text(o.out_dir / skip_file, skipped);
    write_text(o.out_dir / manifest_copy, serialize_manifest(resolved));
    write_text(o.out_dir / config_copy, dump_config(cfg));
    write_text(o.out_dir / run_file, run.dump(2) + "\n");
  } catch (const std::exception& ex) {
    sum.fatal = ex.what();
    sum.exit_code = exit_fatal;
    log << "fatal: " << ex.what() << '\n';
    return finish();
  }
  sum.index_digest = sha256_hex(index);

  if (sum.ok == 0) {
    sum.exit_code = exit_fatal;
    log << "fatal: no sample succeeded\n";
  } else if (o.strict && sum.skipped > 0) {
    sum.exit_code = exit_fatal;
    log << "strict: " << sum.skipped << " skipped sample(s) treated as failure\n";
  }
  finish();
  log << "generate: " << sum.ok << " ok, " << sum.skipped << " skipped, " << sum.wall_seconds << " s";
  if (sum.wall_seconds > 0) log << " (" << static_cast<double>(sum.ok) / sum.wall_seconds << " samples/s)";
  log << "\nindex digest " << sum.index_digest << '\n';
  return sum;
}

// ------------------------------------------------------------------ verify

struct VerifyReport {
  std::uint64_t files_checked = 0;
  std::uint64_t samples_replayed = 0;
  std::vector<std::string> failures;
  int exit_code = exit_ok;
};

/// Re-checks every indexed digest, replays every recipe, and compares the
/// regenerated bytes and sample invariants with what is on disk. Read-only.
inline VerifyReport run_verify(const fs::path& out_dir, std::ostream& log) {
  VerifyReport rep;
  auto fail = [&](std::string msg) {
    log << "FAIL " << msg << '\n';
    rep.failures.push_back(std::move(msg));
  };
  if (!fs::is_directory(out_dir)) {
    log << "fatal: " << out_dir.string() << " is not a directory\n";
    rep.exit_code = exit_fatal;
    rep.failures.push_back("missing output directory");
    return rep;
  }

  std::vector<IndexLine> index;
  PipelineConfig cfg;
  Manifest manifest;
  nlohmann::json run;
  try {
    index = parse_index(read_text(out_dir / index_file));
    cfg = load_config(out_dir / config_copy);
    manifest = parse_manifest(out_dir / manifest_copy, cfg.landmark_count);
    run = nlohmann::json::parse(read_text(out_dir / run_file));
  } catch (const std::exception& ex) {
    fail(std::string("run metadata: ") + ex.what());
    rep.exit_code = exit_verify_failed;
    return rep;
  }

  std::map<std::string, std::size_t> by_key;
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) by_key[manifest.entries[i].key] = i;

  std::map<std::string, Bytes> on_disk;
  for (const auto& l : index) {
    ++rep.files_checked;
    const auto path = out_dir / l.path;
    if (!fs::exists(path)) {
      fail(l.path + ": missing file");
      continue;
    }
    auto bytes = read_file(path);
    if (bytes.size() != l.bytes) fail(l.path + ": size " + std::to_string(bytes.size()) + " != indexed " + std::to_string(l.bytes));
    if (sha256_hex(bytes) != l.digest) fail(l.path + ": digest mismatch");
    on_disk[l.path] = std::move(bytes);
  }
  const auto expected_lines = run.value("ok", std::uint64_t{0}) * all_artifacts.size();
  if (index.size() != expected_lines) {
    fail("index has " + std::to_string(index.size()) + " lines, run recorded " + std::to_string(expected_lines));
  }

  std::map<std::size_t, ImageTensor> images;
  for (const auto& l : index) {
    if (!l.path.ends_with("_recipe.json") || !on_disk.contains(l.path)) continue;
    try {
      const auto& raw = on_disk.at(l.path);
      const auto recipe = parse_recipe(std::string(raw.begin(), raw.end()));
      const auto it = by_key.find(recipe.key);
      if (it == by_key.end()) {
        fail(l.path + ": key '" + recipe.key + "' not in manifest");
        continue;
      }
      const auto& entry = manifest.entries[it->second];
      if (!images.contains(it->second)) images.emplace(it->second, load_image(manifest.resolve(entry)));
      const auto& full = images.at(it->second);
      const auto sample = replay_entry(recipe, entry, full, cfg);
      ++rep.samples_replayed;
      if (!sample.provenance_match) fail(l.path + ": input image digest differs from the recorded one");
      for (const auto& issue : check_sample_invariants(sample, crop_image(full, recipe.crop->rect))) {
        fail(l.path + ": invariant: " + issue);
      }
      for (const auto& issue : within_config(recipe, cfg)) fail(l.path + ": outside config: " + issue);
      const auto regenerated = encode_sample(sample, cfg.png_compression);
      for (std::size_t a = 0; a + 1 < all_artifacts.size(); ++a) {
        const auto name = artifact_name(recipe.key, recipe.sample_index, all_artifacts[a]);
        const auto disk = on_disk.find(name);
        if (disk == on_disk.end()) {
          fail(name + ": not indexed");
        } else if (disk->second != regenerated[a]) {
          fail(name + ": replay mismatch");
        }
      }
    } catch (const std::exception& ex) {
      fail(l.path + ": replay failed: " + ex.what());
    }
  }

  rep.exit_code = rep.failures.empty() ? exit_ok : exit_verify_failed;
  log << (rep.failures.empty() ? "PASS" : "FAIL") << ": " << rep.files_checked << " files, " << rep.samples_replayed
      << " recipes replayed, " << rep.failures.size() << " failure(s)\n";
  return rep;
}

// ------------------------------------------------------------------ replay

struct ReplayOptions {
  fs::path recipe;
  fs::path manifest;
  std::optional<fs::path> config;
  fs::path out_dir;
};

/// Regenerates one sample's four files from its recipe.
inline int run_replay(const ReplayOptions& o, std::ostream& log) {
  try {
    const auto cfg = load_config_or_default(o.config);
    const auto recipe = parse_recipe(read_text(o.recipe));
    const auto manifest = parse_manifest(o.manifest, cfg.landmark_count);
    const auto it = std::ranges::find_if(manifest.entries, [&](const ManifestEntry& e) { return e.key == recipe.key; });
    if (it == manifest.entries.end()) throw ValidationError("key '" + recipe.key + "' not in manifest");
    const auto sample = replay_entry(recipe, *it, load_image(manifest.resolve(*it)), cfg);
    fs::create_directories(o.out_dir);
    for (const auto& l : write_sample(sample, o.out_dir, recipe.key, recipe.sample_index, cfg.png_compression)) {
      log << format_index_line(l) << '\n';
    }
    if (!sample.provenance_match) log << "warning: input image digest differs from the recorded one\n";
    return exit_ok;
  } catch (const std::exception& ex) {
    log << "fatal: " << ex.what() << '\n';
    return exit_fatal;
  }
}

// ------------------------------------------------------------------- audit

struct AuditOptions {
  std::optional<fs::path> config;
  std::uint64_t seed = 42;
  std::uint64_t draws = 60000;
  std::optional<fs::path> summary;
};

inline std::optional<AuditReport> run_audit(const AuditOptions& o, std::ostream& out, std::ostream& log, int* exit_code = nullptr) {
  auto set_exit = [&](int c) { if (exit_code) *exit_code = c; };
  if (o.draws < 1000) {
    log << "fatal: audit needs at least 1000 draws\n";
    set_exit(exit_fatal);
    return std::nullopt;
  }
  try {
    const auto cfg = load_config_or_default(o.config);
    auto rep = audit_parameters(cfg, o.seed, o.draws);
    const auto text = format_audit(rep);
    out << text;
    if (o.summary) write_text(*o.summary, text);
    set_exit(exit_ok);
    return rep;
  } catch (const std::exception& ex) {
    log << "fatal: " << ex.what() << '\n';
    set_exit(exit_fatal);
    return std::nullopt;
  }
}

// ----------------------------------------------------------------- preview

struct PreviewOptions {
  fs::path manifest;
  std::optional<fs::path> config;
  std::uint64_t seed = 42;
  int rows = 2;
  int cols = 4;
  int tile = 128;
  fs::path out_path;
  CropMode mode = CropMode::train;
};

/// Grid of pristine crops (upper row of each pair) above their SBIs.
inline int run_preview(const PreviewOptions& o, std::ostream& log) {
  try {
    if (o.rows < 2 || o.rows % 2 != 0 || o.cols < 1) throw ValidationError("grid must be RxC with even R >= 2 and C >= 1");
    if (o.tile < 1) throw ValidationError("tile size must be >= 1");
    const auto cfg = load_config_or_default(o.config);
    const auto manifest = parse_manifest(o.manifest, cfg.landmark_count);
    const auto needed = static_cast<std::size_t>(o.rows / 2) * static_cast<std::size_t>(o.cols);
    if (manifest.entries.size() < needed) {
      throw ValidationError("grid " + std::to_string(o.rows) + "x" + std::to_string(o.cols) + " needs " +
                            std::to_string(needed) + " manifest entries, got " + std::to_string(manifest.entries.size()));
    }
    ImageTensor grid(o.rows * o.tile, o.cols * o.tile, 0.0f);
    auto paste = [&](const ImageTensor& img, int row, int col) {
      const auto t = resize_bilinear(img, o.tile, o.tile);
      for (int y = 0; y < o.tile; ++y)
        for (int x = 0; x < o.tile; ++x)
          for (std::size_t c = 0; c < 3; ++c) grid.at(row * o.tile + y, col * o.tile + x, c) = t.at(y, x, c);
    };
    const BatchOptions bo{o.seed, 1, 1, o.mode};
    for (std::size_t i = 0; i < needed; ++i) {
      const auto& e = manifest.entries[i];
      const auto full = load_image(manifest.resolve(e));
      const auto s = generate_entry_sample(e, i, 0, full, cfg, bo);
      const int pair = static_cast<int>(i) / o.cols;
      const int col = static_cast<int>(i) % o.cols;
      paste(crop_image(full, s.recipe.crop->rect), 2 * pair, col);
      paste(s.fake_image, 2 * pair + 1, col);
    }
    if (o.out_path.has_parent_path()) fs::create_directories(o.out_path.parent_path());
    write_file(o.out_path, encode_png(grid, cfg.png_compression));
    log << "preview: " << grid.width() << "x" << grid.height() << " -> " << o.out_path.string() << '\n';
    return exit_ok;
  } catch (const std::exception& ex) {
    log << "fatal: " << ex.what() << '\n';
    return exit_fatal;
  }
}

// ------------------------------------------------------------------- score

struct ScoreOptions {
  fs::path scores;
  std::optional<fs::path> labels;  // CSV video_id,label (1 = fake)
  std::optional<fs::path> out;
};

inline int run_score(const ScoreOptions& o, std::ostream& out, std::ostream& log) {
  try {
    std::ifstream in(o.scores);
    if (!in) throw IoError("cannot read " + o.scores.string());
    const auto videos = score_videos(parse_score_file(in));
    std::ostringstream csv;
    csv.precision(17);
    csv << "video_id,score,frames,faces\n";
    for (const auto& v : videos) csv << v.video_id << ',' << v.score << ',' << v.frames << ',' << v.faces << '\n';
    if (o.out) {
      write_text(*o.out, csv.str());
    } else {
      out << csv.str();
    }
    if (o.labels) {
      std::ifstream lin(*o.labels);
      if (!lin) throw IoError("cannot read " + o.labels->string());
      std::map<std::string, int> label_of;
      std::string line;
      long n = 0;
      while (std::getline(lin, line)) {
        ++n;
        if (n == 1 || line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ValidationError("expected video_id,label", n);
        const auto lab = line.substr(comma + 1);
        if (lab != "0" && lab != "1" && lab != "0\r" && lab != "1\r") throw ValidationError("label must be 0 or 1", n);
        label_of[line.substr(0, comma)] = lab[0] - '0';
      }
      std::vector<int> labels;
      std::vector<double> scores;
      for (const auto& v : videos) {
        const auto it = label_of.find(v.video_id);
        if (it == label_of.end()) continue;
        labels.push_back(it->second);
        scores.push_back(v.score);
      }
      log << "auc " << compute_auc(labels, scores) << " over " << labels.size() << " labeled videos\n";
    }
    return exit_ok;
  } catch (const std::exception& ex) {
    log << "fatal: " << ex.what() << '\n';
    return exit_fatal;
  }
}

}  // namespace sbi_forge::cli
