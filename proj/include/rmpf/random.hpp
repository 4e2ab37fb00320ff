#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

namespace rmpf {

using Seed = std::array<std::uint8_t, 32>;

/// Seedable deterministic bit generator: SHA-256 in counter mode over a
/// 32-byte seed. Satisfies std::uniform_random_bit_generator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(const Seed& seed);

  /// Seeds from std::random_device.
  static Rng from_entropy();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform integer in [lo, hi] (inclusive).
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

  /// Derives an independent stream; used to hand workers their own rng.
  Rng fork();

 private:
  void refill();

  Seed seed_;
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, 32> block_{};
  std::size_t pos_ = block_.size();
};

/// Parses exactly 64 hex digits. Returns nullopt on any other input.
std::optional<Seed> parse_seed(std::string_view hex);

}  // namespace rmpf
