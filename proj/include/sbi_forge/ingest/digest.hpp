#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "sbi_forge/core/error.hpp"
#include "sbi_forge/core/raster.hpp"

namespace sbi_forge {

/// Incremental SHA-256 (OpenSSL EVP), lowercase hex output.
class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error("sha256: digest init failed");
    }
  }

  Sha256& update(std::span<const std::uint8_t> bytes) {
    EVP_DigestUpdate(ctx_.get(), bytes.data(), bytes.size());
    return *this;
  }
  Sha256& update(std::string_view s) {
    EVP_DigestUpdate(ctx_.get(), s.data(), s.size());
    return *this;
  }

  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md.data(), &len);
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
      out.push_back(digits[md[i] >> 4]);
      out.push_back(digits[md[i] & 0xF]);
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

inline std::string sha256_hex(std::span<const std::uint8_t> bytes) { return Sha256().update(bytes).hex(); }
inline std::string sha256_hex(std::string_view s) { return Sha256().update(s).hex(); }

/// Content digest of a raster: dimensions plus its 8-bit quantization.
template <std::size_t C>
std::string raster_digest(const Raster<C>& r) {
  const auto q = quantize(r);
  return Sha256()
      .update(std::to_string(r.height()) + "x" + std::to_string(r.width()) + "x" + std::to_string(C) + ":")
      .update(std::span<const std::uint8_t>(q))
      .hex();
}

}  // namespace sbi_forge
