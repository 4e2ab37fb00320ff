#pragma once

#include <cstdint>

#include "rmpf/random.hpp"

namespace rmpf {

/// (a * b) mod n with a 128-bit intermediate. Throws InvalidModulus if n == 0.
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t n);

/// base^exp mod n by square-and-multiply, with 0^0 = 1.
///
/// Every call bumps the calling thread's modexp counter (see modexp_count),
/// which the benchmark uses to verify evaluation cost formulas.
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t n);

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Number of mod_pow calls made on this thread since the last reset.
std::uint64_t modexp_count() noexcept;
void reset_modexp_count() noexcept;

/// A prime field modulus p together with the exponent modulus q = p - 1.
class Modulus {
 public:
  /// Throws InvalidModulus unless p is a prime >= 5.
  explicit Modulus(std::uint64_t p);

  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t q() const noexcept { return p_ - 1; }
  unsigned bits() const noexcept;

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  std::uint64_t p_;
};

/// Random prime with exactly `bits` significant bits, bits in [8, 64].
Modulus generate_prime(unsigned bits, Rng& rng);

}  // namespace rmpf
