#pragma once

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "sbi_forge/core/error.hpp"
#include "sbi_forge/core/raster.hpp"

namespace sbi_forge {

using Bytes = std::vector<std::uint8_t>;

inline Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path, const Bytes& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

namespace image_io_detail {

inline ImageTensor from_bgr(const cv::Mat& bgr) {
  ImageTensor img(bgr.rows, bgr.cols);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) {
      img.at(y, x, 0) = from_u8(row[x][2]);
      img.at(y, x, 1) = from_u8(row[x][1]);
      img.at(y, x, 2) = from_u8(row[x][0]);
    }
  }
  return img;
}

inline Bytes encode(const cv::Mat& m, int compression) {
  std::vector<uchar> buf;
  if (!cv::imencode(".png", m, buf, {cv::IMWRITE_PNG_COMPRESSION, compression})) {
    throw IoError("png encode failed");
  }
  return Bytes(buf.begin(), buf.end());
}

}  // namespace image_io_detail

/// Any OpenCV-readable raster (PNG, JPEG, BMP, ...), converted to 8-bit RGB.
inline ImageTensor load_image(const std::filesystem::path& path) {
  const cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) throw IoError("cannot decode image " + path.string());
  return image_io_detail::from_bgr(bgr);
}

inline ImageTensor decode_image(const Bytes& bytes) {
  const cv::Mat bgr = cv::imdecode(bytes, cv::IMREAD_COLOR);
  if (bgr.empty()) throw IoError("cannot decode image bytes");
  return image_io_detail::from_bgr(bgr);
}

inline Plane decode_gray(const Bytes& bytes) {
  const cv::Mat g = cv::imdecode(bytes, cv::IMREAD_GRAYSCALE);
  if (g.empty()) throw IoError("cannot decode mask bytes");
  Plane p(g.rows, g.cols);
  for (int y = 0; y < g.rows; ++y) {
    for (int x = 0; x < g.cols; ++x) p.at(y, x) = from_u8(g.at<std::uint8_t>(y, x));
  }
  return p;
}

/// Lossless 8-bit PNG of an RGB image.
inline Bytes encode_png(const ImageTensor& img, int compression = 3) {
  cv::Mat bgr(img.height(), img.width(), CV_8UC3);
  for (int y = 0; y < img.height(); ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < img.width(); ++x) {
      row[x] = cv::Vec3b(to_u8(img.at(y, x, 2)), to_u8(img.at(y, x, 1)), to_u8(img.at(y, x, 0)));
    }
  }
  return image_io_detail::encode(bgr, compression);
}

/// Lossless 8-bit grayscale PNG of a single plane.
inline Bytes encode_png(const Plane& plane, int compression = 3) {
  cv::Mat g(plane.height(), plane.width(), CV_8UC1);
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) g.at<std::uint8_t>(y, x) = to_u8(plane.at(y, x));
  }
  return image_io_detail::encode(g, compression);
}

}  // namespace sbi_forge
