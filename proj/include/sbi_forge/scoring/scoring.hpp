#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sbi_forge/core/error.hpp"

namespace sbi_forge {

/// Per-face fakeness confidences of one frame; empty when no face was found.
using FrameScores = std::vector<double>;

inline constexpr double no_face_score = 0.5;

/// Max over faces per frame, mean over frames that have a face, 0.5 when no
/// frame has any face. Faceless frames are left out of the mean.
inline double aggregate_video_score(std::span<const FrameScores> frames) {
  double sum = 0.0;
  std::size_t counted = 0;
  for (const auto& faces : frames) {
    for (double c : faces) {
      if (!(c >= 0.0 && c <= 1.0)) throw ValidationError("confidence outside [0, 1]: " + std::to_string(c));
    }
    if (faces.empty()) continue;
    sum += *std::ranges::max_element(faces);
    ++counted;
  }
  return counted == 0 ? no_face_score : sum / static_cast<double>(counted);
}

inline double aggregate_video_score(const std::vector<FrameScores>& frames) {
  return aggregate_video_score(std::span<const FrameScores>(frames));
}

/// ROC AUC via the rank-sum statistic with mid-ranks, so ties count 1/2.
inline double compute_auc(std::span<const int> labels, std::span<const double> scores) {
  if (labels.size() != scores.size()) throw ShapeError("labels and scores differ in length");
  std::size_t pos = 0;
  for (int l : labels) {
    if (l != 0 && l != 1) throw ValidationError("labels must be 0 or 1");
    pos += static_cast<std::size_t>(l);
  }
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) throw ValidationError("AUC is undefined without both classes");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double mid_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] == 1) rank_sum += mid_rank;
    }
    i = j;
  }
  const double p = static_cast<double>(pos);
  const double n = static_cast<double>(neg);
  return (rank_sum - p * (p + 1.0) / 2.0) / (p * n);
}

inline double compute_auc(const std::vector<int>& labels, const std::vector<double>& scores) {
  return compute_auc(std::span<const int>(labels), std::span<const double>(scores));
}

}  // namespace sbi_forge
