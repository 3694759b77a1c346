#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sbi_forge/core/error.hpp"
#include "sbi_forge/scoring/scoring.hpp"

namespace sbi_forge {

/// Per-face score file, CSV with a header line:
///
///   video_id,frame_index,confidence
///   vid01,0,0.83
///   vid01,0,0.12      (second face in the same frame)
///   vid01,1,          (frame with no detected face)
struct FaceScoreRecord {
  std::string video_id;
  std::int64_t frame_index = 0;
  std::optional<double> confidence;
};

namespace score_file_detail {
inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  for (auto& c : out) {
    while (!c.empty() && (c.back() == '\r' || c.back() == ' ')) c.pop_back();
    while (!c.empty() && c.front() == ' ') c.erase(c.begin());
  }
  return out;
}
}  // namespace score_file_detail

inline std::vector<FaceScoreRecord> parse_score_file(std::istream& in) {
  std::vector<FaceScoreRecord> out;
  std::string line;
  long n = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = score_file_detail::split_csv(line);
    if (!header) {
      if (cells.size() != 3 || cells[0] != "video_id" || cells[1] != "frame_index" || cells[2] != "confidence") {
        throw ValidationError("score file header must be video_id,frame_index,confidence", n);
      }
      header = true;
      continue;
    }
    if (cells.size() != 3) throw ValidationError("expected 3 fields", n);
    FaceScoreRecord r;
    r.video_id = cells[0];
    if (r.video_id.empty()) throw ValidationError("empty video_id", n);
    try {
      std::size_t pos = 0;
      r.frame_index = std::stoll(cells[1], &pos);
      if (pos != cells[1].size()) throw std::invalid_argument("frame");
      if (!cells[2].empty()) {
        r.confidence = std::stod(cells[2], &pos);
        if (pos != cells[2].size()) throw std::invalid_argument("confidence");
      }
    } catch (const std::exception&) {
      throw ValidationError("malformed number", n);
    }
    if (r.confidence && !(*r.confidence >= 0.0 && *r.confidence <= 1.0)) {
      throw ValidationError("confidence outside [0, 1]", n);
    }
    out.push_back(std::move(r));
  }
  if (!header) throw ValidationError("score file is empty");
  return out;
}

struct VideoScore {
  std::string video_id;
  double score = no_face_score;
  std::size_t frames = 0;
  std::size_t faces = 0;
};

/// Groups records by video and frame, then aggregates; sorted by video_id.
inline std::vector<VideoScore> score_videos(const std::vector<FaceScoreRecord>& records) {
  std::map<std::string, std::map<std::int64_t, FrameScores>> videos;
  for (const auto& r : records) {
    auto& frame = videos[r.video_id][r.frame_index];
    if (r.confidence) frame.push_back(*r.confidence);
  }
  std::vector<VideoScore> out;
  for (const auto& [id, frames] : videos) {
    std::vector<FrameScores> list;
    std::size_t faces = 0;
    for (const auto& [idx, f] : frames) {
      list.push_back(f);
      faces += f.size();
    }
    out.push_back({id, aggregate_video_score(list), list.size(), faces});
  }
  return out;
}

}  // namespace sbi_forge
