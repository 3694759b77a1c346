#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sbi_forge/core/error.hpp"
#include "sbi_forge/core/landmarks.hpp"

namespace sbi_forge {

/// Manifest format: JSON lines, one face per line.
///
///   {"schema": "sbi-forge-manifest", "version": 1}          (optional header)
///   {"key": "vid01_f003", "image": "frames/a.png",
///    "landmarks": [[x, y], ...], "bbox": [x0, y0, x1, y1],
///    "video_id": "vid01", "frame_index": 3}
///
/// "key" defaults to e<entry index, 6 digits>; keys must be unique and use
/// only [A-Za-z0-9._-]. Image paths are relative to the manifest's directory
/// unless absolute. Blank lines are ignored.
inline constexpr const char* manifest_schema = "sbi-forge-manifest";
inline constexpr int manifest_version = 1;

struct ManifestEntry {
  std::string key;
  std::string image_path;
  Landmarks landmarks;
  BoundingBox bbox;
  std::optional<std::string> video_id;
  std::optional<std::int64_t> frame_index;
  long line = 0;  // 1-based line in the source file, 0 if synthesized

  friend bool operator==(const ManifestEntry& a, const ManifestEntry& b) {
    return a.key == b.key && a.image_path == b.image_path && a.landmarks == b.landmarks &&
           a.bbox == b.bbox && a.video_id == b.video_id && a.frame_index == b.frame_index;
  }
};

struct Manifest {
  std::filesystem::path base_dir;
  std::vector<ManifestEntry> entries;

  std::filesystem::path resolve(const ManifestEntry& e) const {
    const std::filesystem::path p(e.image_path);
    return p.is_absolute() ? p : base_dir / p;
  }
};

inline bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

namespace manifest_detail {

inline ManifestEntry parse_entry(const nlohmann::json& j, std::size_t index, long line,
                                 std::size_t expected_landmarks) {
  if (!j.is_object()) throw ValidationError("manifest record must be a JSON object", line);
  static const std::set<std::string> known{"key", "image", "landmarks", "bbox", "video_id", "frame_index"};
  for (const auto& [k, v] : j.items()) {
    if (!known.contains(k)) throw ValidationError("unknown manifest field '" + k + "'", line);
  }
  ManifestEntry e;
  e.line = line;
  try {
    if (j.contains("key")) {
      e.key = j.at("key").get<std::string>();
    } else {
      std::ostringstream os;
      os << 'e' << std::setw(6) << std::setfill('0') << index;
      e.key = os.str();
    }
    e.image_path = j.at("image").get<std::string>();
    for (const auto& p : j.at("landmarks")) {
      if (!p.is_array() || p.size() != 2) throw ValidationError("landmark must be an [x, y] pair", line);
      e.landmarks.points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    const auto& b = j.at("bbox");
    if (!b.is_array() || b.size() != 4) throw ValidationError("bbox must be [x0, y0, x1, y1]", line);
    e.bbox = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
    if (j.contains("video_id")) e.video_id = j.at("video_id").get<std::string>();
    if (j.contains("frame_index")) e.frame_index = j.at("frame_index").get<std::int64_t>();
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("malformed manifest record: ") + ex.what(), line);
  }
  if (!valid_key(e.key)) throw ValidationError("key '" + e.key + "' is not filename-safe", line);
  if (e.image_path.empty()) throw ValidationError("image path is empty", line);
  if (!(e.bbox.x0 < e.bbox.x1 && e.bbox.y0 < e.bbox.y1)) {
    throw ValidationError("bbox is inverted: need x0 < x1 and y0 < y1", line);
  }
  if (expected_landmarks > 0 && e.landmarks.size() != expected_landmarks) {
    throw ValidationError("landmark count: expected " + std::to_string(expected_landmarks) + ", got " +
                              std::to_string(e.landmarks.size()),
                          line);
  }
  for (const auto& p : e.landmarks.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ValidationError("landmark not finite", line);
  }
  return e;
}

}  // namespace manifest_detail

/// expected_landmarks = 0 accepts any count.
inline Manifest parse_manifest_text(const std::string& text, const std::filesystem::path& base_dir,
                                    std::size_t expected_landmarks = Landmarks::default_count) {
  Manifest m{base_dir, {}};
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  std::set<std::string> keys;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& ex) {
      throw ValidationError(std::string("malformed JSON: ") + ex.what(), line_no);
    }
    if (j.is_object() && j.contains("schema")) {
      if (j.at("schema") != manifest_schema || j.value("version", 0) != manifest_version) {
        throw ValidationError("unsupported manifest schema/version", line_no);
      }
      continue;
    }
    auto e = manifest_detail::parse_entry(j, m.entries.size(), line_no, expected_landmarks);
    if (!keys.insert(e.key).second) throw ValidationError("duplicate key '" + e.key + "'", line_no);
    m.entries.push_back(std::move(e));
  }
  return m;
}

inline Manifest parse_manifest(const std::filesystem::path& path,
                               std::size_t expected_landmarks = Landmarks::default_count) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest_text(ss.str(), path.parent_path(), expected_landmarks);
}

inline nlohmann::ordered_json to_json(const ManifestEntry& e) {
  nlohmann::ordered_json j;
  j["key"] = e.key;
  j["image"] = e.image_path;
  auto& lm = j["landmarks"] = nlohmann::ordered_json::array();
  for (const auto& p : e.landmarks.points) lm.push_back({p.x, p.y});
  j["bbox"] = {e.bbox.x0, e.bbox.y0, e.bbox.x1, e.bbox.y1};
  if (e.video_id) j["video_id"] = *e.video_id;
  if (e.frame_index) j["frame_index"] = *e.frame_index;
  return j;
}

inline std::string serialize_manifest(const std::vector<ManifestEntry>& entries) {
  std::string out = nlohmann::ordered_json{{"schema", manifest_schema}, {"version", manifest_version}}.dump();
  out += '\n';
  for (const auto& e : entries) {
    out += to_json(e).dump();
    out += '\n';
  }
  return out;
}

inline void write_manifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << serialize_manifest(entries);
}

}  // namespace sbi_forge
