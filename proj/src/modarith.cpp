#include "rmpf/modarith.hpp"

#include <array>
#include <bit>

#include "rmpf/error.hpp"

namespace rmpf {

namespace {

thread_local std::uint64_t g_modexp_calls = 0;

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_unchecked(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

std::uint64_t pow_unchecked(std::uint64_t base, std::uint64_t exp,
                            std::uint64_t n) {
  std::uint64_t result = 1 % n;
  base %= n;
  while (exp != 0) {
    if (exp & 1) result = mul_unchecked(result, base, n);
    base = mul_unchecked(base, base, n);
    exp >>= 1;
  }
  return result;
}

// Witness set that is deterministic for every n < 2^64.
constexpr std::array<std::uint64_t, 12> kWitnesses = {2,  3,  5,  7,  11, 13,
                                                      17, 19, 23, 29, 31, 37};

}  // namespace

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  if (n == 0) throw InvalidModulus("modulus must be nonzero");
  return mul_unchecked(a, b, n);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t n) {
  if (n == 0) throw InvalidModulus("modulus must be nonzero");
  ++g_modexp_calls;
  return pow_unchecked(base, exp, n);
}

std::uint64_t modexp_count() noexcept { return g_modexp_calls; }
void reset_modexp_count() noexcept { g_modexp_calls = 0; }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t w : kWitnesses) {
    if (n % w == 0) return n == w;
  }
  const std::uint64_t d_full = n - 1;
  const int s = std::countr_zero(d_full);
  const std::uint64_t d = d_full >> s;
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = pow_unchecked(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_unchecked(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Modulus::Modulus(std::uint64_t p) : p_(p) {
  if (p < 5 || !is_prime(p)) {
    throw InvalidModulus("modulus " + std::to_string(p) +
                         " is not a prime >= 5");
  }
}

unsigned Modulus::bits() const noexcept {
  return static_cast<unsigned>(std::bit_width(p_));
}

Modulus generate_prime(unsigned bits, Rng& rng) {
  if (bits < 8 || bits > 64) {
    throw InvalidArgument("prime size must be in [8, 64] bits");
  }
  const std::uint64_t top = std::uint64_t{1} << (bits - 1);
  const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (top << 1) - 1;
  for (;;) {
    const std::uint64_t candidate = (rng() & mask) | top | 1;
    if (is_prime(candidate)) return Modulus(candidate);
  }
}

}  // namespace rmpf
