#include "rmpf/random.hpp"

#include <random>

#include "rmpf/bytes.hpp"
#include "rmpf/hex.hpp"
#include "rmpf/sha256.hpp"

namespace rmpf {

Rng::Rng(const Seed& seed) : seed_(seed) {}

Rng Rng::from_entropy() {
  std::random_device rd;
  Seed seed;
  for (std::size_t i = 0; i < seed.size(); i += 4) {
    const std::uint32_t word = rd();
    for (std::size_t b = 0; b < 4; ++b) {
      seed[i + b] = static_cast<std::uint8_t>(word >> (8 * b));
    }
  }
  return Rng(seed);
}

void Rng::refill() {
  Bytes input(seed_.begin(), seed_.end());
  ByteWriter(input).u64(counter_++);
  block_ = Sha256::hash(input);
  pos_ = 0;
}

Rng::result_type Rng::operator()() {
  if (pos_ + 8 > block_.size()) refill();
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | block_[pos_++];
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t range = hi - lo + 1;
  if (range == 0) return (*this)();  // full 64-bit span
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const std::uint64_t r = (*this)();
    if (r >= threshold) return lo + r % range;
  }
}

Rng Rng::fork() {
  Seed child;
  for (std::size_t i = 0; i < child.size(); i += 8) {
    const std::uint64_t word = (*this)();
    for (std::size_t b = 0; b < 8; ++b) {
      child[i + b] = static_cast<std::uint8_t>(word >> (56 - 8 * b));
    }
  }
  return Rng(child);
}

std::optional<Seed> parse_seed(std::string_view hex) {
  auto bytes = from_hex(hex);
  if (!bytes || bytes->size() != 32) return std::nullopt;
  Seed seed;
  std::copy(bytes->begin(), bytes->end(), seed.begin());
  return seed;
}

}  // namespace rmpf
