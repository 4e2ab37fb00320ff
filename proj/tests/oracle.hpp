#pragma once

// Reference computations for the tests. Everything here works on
// boost::multiprecision integers with unreduced exponents, so it shares no
// arithmetic with the library beyond the input values.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <vector>

#include "rmpf/kap.hpp"
#include "rmpf/matrix.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;
using BigGrid = std::vector<cpp_int>;  // row-major

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  cpp_int r = cpp_int(a) * cpp_int(b) % cpp_int(n);
  return r.convert_to<std::uint64_t>();
}

inline std::uint64_t pow_mod(std::uint64_t base, const cpp_int& exp,
                             std::uint64_t p) {
  if (exp == 0) return 1 % p;
  return boost::multiprecision::powm(cpp_int(base), exp, cpp_int(p))
      .convert_to<std::uint64_t>();
}

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline BigGrid to_big(std::span<const std::uint64_t> v) {
  return BigGrid(v.begin(), v.end());
}

// q_ij = prod_k prod_l w_kl ^ (x_ik * y_lj), exponents as exact integers.
inline std::vector<std::uint64_t> two_sided(const BigGrid& x,
                                            std::span<const std::uint64_t> w,
                                            const BigGrid& y, std::size_t m,
                                            std::size_t n, std::uint64_t p) {
  std::vector<std::uint64_t> out(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cpp_int acc = 1;
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          acc = acc * pow_mod(w[k * n + l], x[i * n + k] * y[l * n + j], p) % p;
        }
      }
      out[i * n + j] = acc.convert_to<std::uint64_t>();
    }
  }
  return out;
}

inline std::vector<std::uint64_t> left(const BigGrid& x,
                                       std::span<const std::uint64_t> w,
                                       std::size_t m, std::size_t n,
                                       std::uint64_t p) {
  std::vector<std::uint64_t> out(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cpp_int acc = 1;
      for (std::size_t k = 0; k < n; ++k) {
        acc = acc * pow_mod(w[k * n + j], x[i * n + k], p) % p;
      }
      out[i * n + j] = acc.convert_to<std::uint64_t>();
    }
  }
  return out;
}

inline std::vector<std::uint64_t> right(std::span<const std::uint64_t> w,
                                        const BigGrid& y, std::size_t m,
                                        std::size_t n, std::uint64_t p) {
  std::vector<std::uint64_t> out(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cpp_int acc = 1;
      for (std::size_t l = 0; l < n; ++l) {
        acc = acc * pow_mod(w[i * n + l], y[l * n + j], p) % p;
      }
      out[i * n + j] = acc.convert_to<std::uint64_t>();
    }
  }
  return out;
}

// A^T * B over the integers (n x n), entries reduced mod q at the end.
inline std::vector<std::uint64_t> gram(std::span<const std::uint64_t> a,
                                       std::span<const std::uint64_t> b,
                                       std::size_t m, std::size_t n,
                                       std::uint64_t q) {
  std::vector<std::uint64_t> out(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      cpp_int acc = 0;
      for (std::size_t i = 0; i < m; ++i) {
        acc += cpp_int(a[i * n + r]) * b[i * n + c];
      }
      out[r * n + c] = cpp_int(acc % q).convert_to<std::uint64_t>();
    }
  }
  return out;
}

}  // namespace oracle

namespace testutil {

inline rmpf::Rng rng(std::uint64_t tag) {
  rmpf::Seed seed{};
  for (int i = 0; i < 8; ++i) seed[i] = static_cast<std::uint8_t>(tag >> (8 * i));
  return rmpf::Rng(seed);
}

/// A fixed 64-bit prime (2^64 - 59) for large-modulus property runs.
inline constexpr std::uint64_t kP64 = 18446744073709551557ULL;

}  // namespace testutil
