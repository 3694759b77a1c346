#pragma once

#include <string>

#include "sbi_forge/core/raster.hpp"

namespace sbi_forge {

/// out = source * M + target * (1 - M), per pixel and channel.
inline ImageTensor blend(const ImageTensor& source, const ImageTensor& target,
                         const BlendMask& mask) {
  auto dims = [](int h, int w) { return std::to_string(h) + "x" + std::to_string(w); };
  if (!source.same_shape(target)) {
    throw ShapeError("blend: source " + dims(source.height(), source.width()) + " vs target " +
                     dims(target.height(), target.width()));
  }
  if (!source.same_shape(mask.height(), mask.width())) {
    throw ShapeError("blend: source " + dims(source.height(), source.width()) + " vs mask " +
                     dims(mask.height(), mask.width()));
  }
  ImageTensor out(source.height(), source.width());
  const auto s = source.data();
  const auto t = target.data();
  const auto m = mask.data();
  auto o = out.data();
  for (std::size_t p = 0; p < m.size(); ++p) {
    const double w = m[p];
    for (std::size_t c = 0; c < 3; ++c) {
      const std::size_t i = p * 3 + c;
      o[i] = static_cast<float>(static_cast<double>(s[i]) * w + static_cast<double>(t[i]) * (1.0 - w));
    }
  }
  return out;
}

}  // namespace sbi_forge
