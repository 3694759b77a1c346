#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sbi_forge/core/error.hpp"
#include "sbi_forge/core/raster.hpp"

namespace sbi_forge {

// Standard kernel-size rule: sigma = 0.3 * ((k - 1) / 2 - 1) + 0.8.
inline double sigma_for_kernel_size(int ksize) { return 0.3 * ((ksize - 1) * 0.5 - 1.0) + 0.8; }

// Radius ceil(3 sigma), used when a blur is specified by sigma alone.
inline int kernel_size_for_sigma(double sigma) {
  return 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1;
}

/// Normalized 1-D Gaussian taps.
inline std::vector<double> gaussian_kernel(int ksize, double sigma) {
  if (ksize < 1 || ksize % 2 == 0) {
    throw ParameterError("gaussian kernel size must be odd and >= 1, got " + std::to_string(ksize));
  }
  if (!(sigma > 0.0)) throw ParameterError("gaussian sigma must be > 0");
  std::vector<double> k(static_cast<std::size_t>(ksize));
  const int r = ksize / 2;
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
    k[static_cast<std::size_t>(i + r)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

// Reflect without repeating the edge: ... 2 1 | 0 1 2 ... n-1 | n-2 ...
inline int reflect101(int i, int n) noexcept {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

/// Separable Gaussian blur, reflect-101 border, double accumulation.
template <std::size_t C>
Raster<C> gaussian_blur(const Raster<C>& src, int ksize, double sigma) {
  const auto taps = gaussian_kernel(ksize, sigma);
  if (ksize == 1) return src;
  const int r = ksize / 2;
  const int h = src.height();
  const int w = src.width();

  std::vector<double> tmp(src.data().size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (std::size_t c = 0; c < C; ++c) {
        double acc = 0.0;
        for (int k = -r; k <= r; ++k) {
          acc += taps[static_cast<std::size_t>(k + r)] * src.at(y, reflect101(x + k, w), c);
        }
        tmp[(static_cast<std::size_t>(y) * w + x) * C + c] = acc;
      }
    }
  }
  Raster<C> out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (std::size_t c = 0; c < C; ++c) {
        double acc = 0.0;
        for (int k = -r; k <= r; ++k) {
          const int yy = reflect101(y + k, h);
          acc += taps[static_cast<std::size_t>(k + r)] * tmp[(static_cast<std::size_t>(yy) * w + x) * C + c];
        }
        out.at(y, x, c) = clamp_unit(acc);
      }
    }
  }
  return out;
}

template <std::size_t C>
Raster<C> gaussian_blur(const Raster<C>& src, int ksize) {
  return gaussian_blur(src, ksize, sigma_for_kernel_size(ksize));
}

/// Gaussian smoothing of an unbounded real field (no clamping).
inline std::vector<double> gaussian_smooth_field(const std::vector<double>& field, int h, int w,
                                                 double sigma) {
  const int ksize = kernel_size_for_sigma(sigma);
  const auto taps = gaussian_kernel(ksize, sigma);
  const int r = ksize / 2;
  std::vector<double> tmp(field.size());
  std::vector<double> out(field.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -r; k <= r; ++k) {
        acc += taps[static_cast<std::size_t>(k + r)] * field[static_cast<std::size_t>(y) * w + reflect101(x + k, w)];
      }
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -r; k <= r; ++k) {
        acc += taps[static_cast<std::size_t>(k + r)] * tmp[static_cast<std::size_t>(reflect101(y + k, h)) * w + x];
      }
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

/// Bilinear resize with half-pixel centers: src = (dst + 0.5) * (in / out) - 0.5,
/// clamped to the source extent.
template <std::size_t C>
Raster<C> resize_bilinear(const Raster<C>& src, int out_h, int out_w) {
  if (out_h < 1 || out_w < 1) {
    throw ParameterError("resize target must be >= 1x1, got " + std::to_string(out_h) + "x" +
                         std::to_string(out_w));
  }
  const int h = src.height();
  const int w = src.width();
  if (out_h == h && out_w == w) return src;

  struct Tap {
    int i0, i1;
    double f;
  };
  auto taps = [](int out_n, int in_n) {
    std::vector<Tap> t(static_cast<std::size_t>(out_n));
    const double scale = static_cast<double>(in_n) / out_n;
    for (int o = 0; o < out_n; ++o) {
      double s = (o + 0.5) * scale - 0.5;
      s = std::clamp(s, 0.0, static_cast<double>(in_n - 1));
      const int i0 = static_cast<int>(std::floor(s));
      const int i1 = std::min(i0 + 1, in_n - 1);
      t[static_cast<std::size_t>(o)] = {i0, i1, s - i0};
    }
    return t;
  };
  const auto ty = taps(out_h, h);
  const auto tx = taps(out_w, w);

  Raster<C> out(out_h, out_w);
  for (int y = 0; y < out_h; ++y) {
    const auto& a = ty[static_cast<std::size_t>(y)];
    for (int x = 0; x < out_w; ++x) {
      const auto& b = tx[static_cast<std::size_t>(x)];
      for (std::size_t c = 0; c < C; ++c) {
        const double top = src.at(a.i0, b.i0, c) * (1.0 - b.f) + src.at(a.i0, b.i1, c) * b.f;
        const double bot = src.at(a.i1, b.i0, c) * (1.0 - b.f) + src.at(a.i1, b.i1, c) * b.f;
        out.at(y, x, c) = clamp_unit(top * (1.0 - a.f) + bot * a.f);
      }
    }
  }
  return out;
}

/// Bilinear sample at real (x, y); neighbours outside the raster read as zero.
template <std::size_t C>
double sample_bilinear_zero(const Raster<C>& src, double x, double y, std::size_t c = 0) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const double ax = x - fx;
  const double ay = y - fy;
  // Far outside: every neighbour is out of range.
  if (fx < -1.0 || fy < -1.0 || fx > src.width() || fy > src.height()) return 0.0;
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  auto px = [&](int yy, int xx) -> double {
    if (xx < 0 || yy < 0 || xx >= src.width() || yy >= src.height()) return 0.0;
    return src.at(yy, xx, c);
  };
  const double top = px(y0, x0) * (1.0 - ax) + px(y0, x0 + 1) * ax;
  const double bot = px(y0 + 1, x0) * (1.0 - ax) + px(y0 + 1, x0 + 1) * ax;
  return top * (1.0 - ay) + bot * ay;
}

}  // namespace sbi_forge
