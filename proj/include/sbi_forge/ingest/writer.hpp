#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sbi_forge/core/error.hpp"
#include "sbi_forge/ingest/digest.hpp"
#include "sbi_forge/ingest/image_io.hpp"
#include "sbi_forge/pipeline/pipeline.hpp"

namespace sbi_forge {

/// Batch index line: <relative path> TAB <sha256> TAB <byte size>.
struct IndexLine {
  std::string path;
  std::string digest;
  std::uintmax_t bytes = 0;
  friend bool operator==(const IndexLine&, const IndexLine&) = default;
};

inline std::string format_index_line(const IndexLine& l) {
  return l.path + '\t' + l.digest + '\t' + std::to_string(l.bytes);
}

inline std::vector<IndexLine> parse_index(const std::string& text) {
  std::vector<IndexLine> out;
  std::istringstream in(text);
  std::string line;
  long n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    std::istringstream ls(line);
    IndexLine l;
    std::string size;
    if (!std::getline(ls, l.path, '\t') || !std::getline(ls, l.digest, '\t') || !std::getline(ls, size)) {
      throw ValidationError("malformed index line", n);
    }
    try {
      l.bytes = std::stoull(size);
    } catch (const std::exception&) {
      throw ValidationError("malformed index byte size", n);
    }
    out.push_back(std::move(l));
  }
  return out;
}

enum class Artifact { real, fake, mask, recipe };
inline constexpr std::array<Artifact, 4> all_artifacts{Artifact::real, Artifact::fake, Artifact::mask, Artifact::recipe};

inline std::string sample_stem(const std::string& key, std::uint64_t sample_index) {
  return key + "_" + std::to_string(sample_index);
}

inline std::string artifact_name(const std::string& key, std::uint64_t sample_index, Artifact a) {
  const auto stem = sample_stem(key, sample_index);
  switch (a) {
    case Artifact::real: return stem + "_real.png";
    case Artifact::fake: return stem + "_fake.png";
    case Artifact::mask: return stem + "_mask.png";
    case Artifact::recipe: break;
  }
  return stem + "_recipe.json";
}

/// The four files of a sample, in artifact order, as they go to disk.
inline std::array<Bytes, 4> encode_sample(const SbiSample& s, int png_compression) {
  const auto recipe = serialize_recipe(s.recipe);
  return {encode_png(s.real_image, png_compression), encode_png(s.fake_image, png_compression),
          encode_png(s.mask.plane(), png_compression), Bytes(recipe.begin(), recipe.end())};
}

/// Writes real/fake/mask PNGs and the recipe; returns their index lines
/// (paths relative to out_dir).
inline std::vector<IndexLine> write_sample(const SbiSample& s, const std::filesystem::path& out_dir,
                                           const std::string& key, std::uint64_t sample_index,
                                           int png_compression = 3) {
  const auto files = encode_sample(s, png_compression);
  std::vector<IndexLine> lines;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto name = artifact_name(key, sample_index, all_artifacts[i]);
    write_file(out_dir / name, files[i]);
    lines.push_back({name, sha256_hex(files[i]), files[i].size()});
  }
  return lines;
}

}  // namespace sbi_forge
