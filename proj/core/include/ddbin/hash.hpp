#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace ddbin {

/// FNV-1a, 64 bit. Used for provenance hashes of inputs and configs.
class Fnv1a64 {
 public:
  void update(std::span<const std::uint8_t> bytes) noexcept;
  void update(std::string_view text) noexcept;
  std::uint64_t digest() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// 16 lowercase hex digits.
std::string to_hex(std::uint64_t value);

}  // namespace ddbin
