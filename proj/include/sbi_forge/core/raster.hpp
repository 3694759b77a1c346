#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sbi_forge/core/error.hpp"

namespace sbi_forge {

/// Row-major, channel-interleaved raster of unit-interval intensities.
///
/// A default-constructed raster is empty (0x0) and only useful as a
/// placeholder; every operation rejects empty rasters via validate().
template <std::size_t Channels>
class Raster {
 public:
  static constexpr std::size_t channels = Channels;

  Raster() = default;

  Raster(int height, int width, float fill = 0.0f) : height_(height), width_(width) {
    if (height < 1 || width < 1) {
      throw ShapeError("raster dimensions must be >= 1, got " + std::to_string(height) + "x" +
                       std::to_string(width));
    }
    data_.assign(static_cast<std::size_t>(height) * static_cast<std::size_t>(width) * Channels,
                 fill);
  }

  Raster(int height, int width, std::vector<float> data) : Raster(height, width) {
    if (data.size() != data_.size()) {
      throw ShapeError("raster data length " + std::to_string(data.size()) + " != " +
                       std::to_string(data_.size()));
    }
    data_ = std::move(data);
  }

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  }

  float& at(int y, int x, std::size_t c = 0) noexcept { return data_[index(y, x, c)]; }
  float at(int y, int x, std::size_t c = 0) const noexcept { return data_[index(y, x, c)]; }

  std::span<float> data() noexcept { return data_; }
  std::span<const float> data() const noexcept { return data_; }

  bool same_shape(int height, int width) const noexcept {
    return height_ == height && width_ == width;
  }
  template <std::size_t C>
  bool same_shape(const Raster<C>& other) const noexcept {
    return same_shape(other.height(), other.width());
  }

  // Throws unless the raster is non-empty and every value is finite and in [0, 1].
  void validate(const char* what = "raster") const {
    if (empty()) throw ShapeError(std::string(what) + " is empty");
    for (float v : data_) {
      if (!(v >= 0.0f && v <= 1.0f)) {
        throw ParameterError(std::string(what) + " has an intensity outside [0, 1]");
      }
    }
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t index(int y, int x, std::size_t c) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * Channels + c;
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<float> data_;
};

using ImageTensor = Raster<3>;
using Plane = Raster<1>;

inline float clamp_unit(double v) noexcept {
  return static_cast<float>(std::clamp(v, 0.0, 1.0));
}

// 8-bit conversion: v / 255 in, round(v * 255) clamped out.
inline float from_u8(std::uint8_t v) noexcept { return static_cast<float>(v) / 255.0f; }
inline std::uint8_t to_u8(float v) noexcept {
  const long q = std::lround(static_cast<double>(v) * 255.0);
  return static_cast<std::uint8_t>(std::clamp(q, 0L, 255L));
}

template <std::size_t Channels>
std::vector<std::uint8_t> quantize(const Raster<Channels>& r) {
  std::vector<std::uint8_t> out(r.data().size());
  std::ranges::transform(r.data(), out.begin(), to_u8);
  return out;
}

template <std::size_t Channels>
Raster<Channels> dequantize(int height, int width, std::span<const std::uint8_t> bytes) {
  std::vector<float> data(bytes.size());
  std::ranges::transform(bytes, data.begin(), from_u8);
  return Raster<Channels>(height, width, std::move(data));
}

/// Blending mask M paired with the ratio r last multiplied into it.
class BlendMask {
 public:
  BlendMask() = default;
  explicit BlendMask(Plane plane, double ratio = 1.0) : plane_(std::move(plane)), ratio_(ratio) {}
  BlendMask(int height, int width, float fill = 0.0f) : plane_(height, width, fill) {}

  int height() const noexcept { return plane_.height(); }
  int width() const noexcept { return plane_.width(); }
  double ratio() const noexcept { return ratio_; }
  void set_ratio(double r) noexcept { ratio_ = r; }

  const Plane& plane() const noexcept { return plane_; }
  Plane& plane() noexcept { return plane_; }
  float at(int y, int x) const noexcept { return plane_.at(y, x); }
  float& at(int y, int x) noexcept { return plane_.at(y, x); }
  std::span<const float> data() const noexcept { return plane_.data(); }
  std::span<float> data() noexcept { return plane_.data(); }

  bool is_binary() const noexcept {
    return std::ranges::all_of(plane_.data(), [](float v) { return v == 0.0f || v == 1.0f; });
  }
  float max_value() const noexcept {
    const auto d = plane_.data();
    return d.empty() ? 0.0f : *std::ranges::max_element(d);
  }
  std::size_t support_area() const noexcept {
    return static_cast<std::size_t>(std::ranges::count_if(plane_.data(), [](float v) { return v > 0.0f; }));
  }

  void validate() const {
    plane_.validate("mask");
    if (!(ratio_ > 0.0 && ratio_ <= 1.0)) throw ParameterError("mask ratio outside (0, 1]");
    const double bound = ratio_;
    for (float v : plane_.data()) {
      if (v > bound) throw ParameterError("mask value exceeds its ratio");
    }
  }

  friend bool operator==(const BlendMask&, const BlendMask&) = default;

 private:
  Plane plane_;
  double ratio_ = 1.0;
};

}  // namespace sbi_forge
