#pragma once

#include <array>
#include <cstdint>

namespace ddbin {

/// SplitMix64 finalizer; a bijective 64-bit mix.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// xoshiro256** seeded through SplitMix64. Output is identical on every
/// platform, unlike the std distributions layered on std engines.
///
/// Stream splitting: `Xoshiro256::stream(seed, tag, index)` derives an
/// independent generator for sub-stream `index` of purpose `tag`. Monte-Carlo
/// trials use index = trial number so that results do not depend on how
/// trials are scheduled across threads.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) noexcept;

  static Xoshiro256 stream(std::uint64_t seed, std::uint64_t tag,
                           std::uint64_t index) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform integer in [0, bound); bound must be > 0. Unbiased (Lemire).
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Source of standard-normal variates. Sensor reads draw through this
/// interface so tests can count draws.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual double normal() = 0;
};

/// Standard normals via the Marsaglia polar method on a Xoshiro256 stream.
class NormalStream final : public NoiseSource {
 public:
  explicit NormalStream(Xoshiro256 gen) noexcept : gen_(gen) {}
  explicit NormalStream(std::uint64_t seed) noexcept : gen_(seed) {}

  double normal() override;

 private:
  Xoshiro256 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ddbin
