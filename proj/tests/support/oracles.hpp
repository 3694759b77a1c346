#pragma once

// Reference implementations used only by tests. Each one is written from
// the defining formula, independent of the library code path it checks.

#include <cmath>
#include <cstddef>
#include <vector>

#include "sbi_forge/core/landmarks.hpp"
#include "sbi_forge/core/raster.hpp"

namespace oracle {

using sbi_forge::Point2;

// I_SB = I_s * M + I_t * (1 - M), one scalar at a time.
inline std::vector<double> blend(const std::vector<double>& s, const std::vector<double>& t,
                                 const std::vector<double>& m) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double w = m[i / 3];
    out[i] = s[i] * w + t[i] * (1.0 - w);
  }
  return out;
}

// Mirror an index into [0, n) without repeating the edge, by walking.
inline int mirror(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

// Direct O(k^2) 2-D convolution with the normalized outer-product kernel.
inline std::vector<double> gaussian_conv2d(const sbi_forge::Plane& src, int ksize) {
  const double sigma = 0.3 * ((ksize - 1) / 2.0 - 1.0) + 0.8;
  const int r = ksize / 2;
  std::vector<double> k2(static_cast<std::size_t>(ksize * ksize));
  double total = 0.0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      k2[static_cast<std::size_t>((dy + r) * ksize + dx + r)] = w;
      total += w;
    }
  }
  std::vector<double> out(src.pixel_count());
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      double acc = 0.0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          acc += k2[static_cast<std::size_t>((dy + r) * ksize + dx + r)] *
                 src.at(mirror(y + dy, src.height()), mirror(x + dx, src.width()));
        }
      }
      out[static_cast<std::size_t>(y * src.width() + x)] = acc / total;
    }
  }
  return out;
}

// Gather warp: out(x, y) = bilinear(mask, x + dx, y + dy), zero outside.
inline std::vector<double> gather_warp(const sbi_forge::Plane& m, const std::vector<double>& dxs,
                                       const std::vector<double>& dys) {
  auto px = [&](long yy, long xx) -> double {
    if (xx < 0 || yy < 0 || xx >= m.width() || yy >= m.height()) return 0.0;
    return m.at(static_cast<int>(yy), static_cast<int>(xx));
  };
  std::vector<double> out(m.pixel_count());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      const std::size_t i = static_cast<std::size_t>(y * m.width() + x);
      const double sx = x + dxs[i];
      const double sy = y + dys[i];
      const long x0 = static_cast<long>(std::floor(sx));
      const long y0 = static_cast<long>(std::floor(sy));
      const double fx = sx - x0, fy = sy - y0;
      out[i] = (1 - fx) * (1 - fy) * px(y0, x0) + fx * (1 - fy) * px(y0, x0 + 1) +
               (1 - fx) * fy * px(y0 + 1, x0) + fx * fy * px(y0 + 1, x0 + 1);
    }
  }
  return out;
}

// Half-pixel-centre bilinear resize of a 3-channel raster, one output
// sample at a time from the continuous reconstruction.
inline sbi_forge::ImageTensor bilinear_resize(const sbi_forge::ImageTensor& src, int oh, int ow) {
  sbi_forge::ImageTensor out(oh, ow);
  auto clampd = [](double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); };
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      const double sy = clampd((y + 0.5) * src.height() / oh - 0.5, 0.0, src.height() - 1.0);
      const double sx = clampd((x + 0.5) * src.width() / ow - 0.5, 0.0, src.width() - 1.0);
      const int y0 = static_cast<int>(sy), x0 = static_cast<int>(sx);
      const int y1 = y0 + 1 < src.height() ? y0 + 1 : y0;
      const int x1 = x0 + 1 < src.width() ? x0 + 1 : x0;
      const double fy = sy - y0, fx = sx - x0;
      for (std::size_t c = 0; c < 3; ++c) {
        const double v = (1 - fy) * ((1 - fx) * src.at(y0, x0, c) + fx * src.at(y0, x1, c)) +
                         fy * ((1 - fx) * src.at(y1, x0, c) + fx * src.at(y1, x1, c));
        out.at(y, x, c) = static_cast<float>(v);
      }
    }
  }
  return out;
}

// Supporting lines of the point set, found by brute force: the directed
// line a->b supports the set when no point lies strictly to its right.
struct HalfPlane {
  Point2 a, b;
};

inline std::vector<HalfPlane> supporting_half_planes(const std::vector<Point2>& pts) {
  std::vector<HalfPlane> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j || (pts[i].x == pts[j].x && pts[i].y == pts[j].y)) continue;
      bool supports = true;
      bool strict_left = false;
      for (const auto& p : pts) {
        const double c = (pts[j].x - pts[i].x) * (p.y - pts[i].y) - (pts[j].y - pts[i].y) * (p.x - pts[i].x);
        if (c < 0.0) {
          supports = false;
          break;
        }
        if (c > 0.0) strict_left = true;
      }
      if (supports && strict_left) out.push_back({pts[i], pts[j]});
    }
  }
  return out;
}

// 1 where the pixel centre lies in every supporting half-plane.
inline std::vector<int> hull_raster(const std::vector<Point2>& pts, int h, int w) {
  const auto planes = supporting_half_planes(pts);
  std::vector<int> out(static_cast<std::size_t>(h * w), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool in = !planes.empty();
      for (const auto& hp : planes) {
        const double c = (hp.b.x - hp.a.x) * (y - hp.a.y) - (hp.b.y - hp.a.y) * (x - hp.a.x);
        if (c < 0.0) {
          in = false;
          break;
        }
      }
      out[static_cast<std::size_t>(y * w + x)] = in ? 1 : 0;
    }
  }
  return out;
}

// AUC by counting concordant (positive, negative) pairs; ties count 1/2.
inline double auc_pairs(const std::vector<int>& labels, const std::vector<double>& scores) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (labels[j] != 0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

}  // namespace oracle
