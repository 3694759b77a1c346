#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sbi_forge/core/error.hpp"

namespace sbi_forge {

/// Deterministic counter-based random streams.
///
/// Algorithm (fixed; recipes depend on it):
///   finalize(z)  = SplitMix64 output mix (Stafford variant 13) of z
///   key          = finalize(finalize(finalize(seed + G) + stream_id) + tag)
///   draw n (n=1,2,...) = finalize(key + n * G),  G = 0x9E3779B97F4A7C15
/// i.e. a SplitMix64 sequence started at `key`, addressable by counter.
///
/// stream_id = image_index * 2^24 + sample_index (injective for
/// sample_index < 2^24, image_index < 2^40). Sub-steps draw from child
/// streams: child(t).tag = finalize(tag + (t + 1) * G).
namespace rng_detail {
inline constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace rng_detail

inline constexpr std::uint64_t max_samples_per_image = 1ULL << 24;
inline constexpr std::uint64_t max_image_index = 1ULL << 40;

inline std::uint64_t make_stream_id(std::uint64_t image_index, std::uint64_t sample_index) {
  if (sample_index >= max_samples_per_image || image_index >= max_image_index) {
    throw ParameterError("stream index out of range");
  }
  return image_index * max_samples_per_image + sample_index;
}

// Tags for the sub-steps of one generation.
enum class StreamTag : std::uint64_t {
  source_target = 1,
  resize_translate = 2,
  landmark_transform = 3,
  mask_kernels = 4,
  elastic_field = 5,
  blend_ratio = 6,
  crop_margin = 7,
};

/// Identity of a stream without its position; enough to re-create it.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::uint64_t tag = 0;
  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t tag = 0)
      : id_{seed, stream_id, tag} {
    using rng_detail::finalize;
    using rng_detail::golden;
    key_ = finalize(finalize(finalize(seed + golden) + stream_id) + tag);
  }
  explicit RngStream(const StreamKey& k) : RngStream(k.seed, k.stream_id, k.tag) {}

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return rng_detail::finalize(key_ + counter_ * rng_detail::golden);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), Lemire's multiply-shift with rejection.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw ParameterError("next_below(0)");
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  RngStream child(std::uint64_t t) const {
    return RngStream(id_.seed, id_.stream_id,
                     rng_detail::finalize(id_.tag + (t + 1) * rng_detail::golden));
  }
  RngStream child(StreamTag t) const { return child(static_cast<std::uint64_t>(t)); }

  const StreamKey& key() const noexcept { return id_; }
  std::uint64_t seed() const noexcept { return id_.seed; }
  std::uint64_t stream_id() const noexcept { return id_.stream_id; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  StreamKey id_;
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

/// Uniform draw in [lo, hi); returns lo when lo == hi.
inline double draw_uniform(RngStream& stream, double lo, double hi) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ParameterError("draw_uniform: need finite lo <= hi, got [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
  }
  const double u = stream.next_unit();
  if (lo == hi) return lo;
  const double v = lo + (hi - lo) * u;
  return v < hi ? v : std::nextafter(hi, lo);
}

/// Uniform pick over list positions; repeated values weight the outcome.
template <typename T>
T draw_choice(RngStream& stream, std::span<const T> items) {
  if (items.empty()) throw ParameterError("draw_choice: empty item list");
  return items[static_cast<std::size_t>(stream.next_below(items.size()))];
}

template <typename T>
T draw_choice(RngStream& stream, const std::vector<T>& items) {
  return draw_choice(stream, std::span<const T>(items));
}

}  // namespace sbi_forge
