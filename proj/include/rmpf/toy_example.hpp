#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rmpf/kap.hpp"

namespace rmpf::toy {

inline constexpr std::size_t kRows = 5;
inline constexpr std::size_t kCols = 3;

using Grid = std::array<std::uint64_t, kRows * kCols>;

/// Reference 104729 / (5, 3) walkthrough. Private exponent matrices are
/// kept exactly as printed (unreduced integer products).
struct Fixture {
  std::uint64_t p;
  Grid base, x, y;
  std::uint64_t lambda_a, omega_a, lambda_b, omega_b;
  Grid a1, b1, a2, b2;
  Grid token_a, token_b, key_a, key_b;
};

const Fixture& fixture();

PublicParams params(const Fixture& f = fixture());

struct CellCheck {
  std::string figure;  // e.g. "Figure 4 TokenA"
  std::size_t row;     // 1-based
  std::size_t col;     // 1-based
  std::uint64_t expected;
  std::uint64_t actual;
  bool ok() const { return expected == actual; }
};

/// Recomputes the walkthrough from the fixture's inputs and compares every
/// reference cell. Exponent matrices are compared mod p - 1.
std::vector<CellCheck> verify(const Fixture& f = fixture());

}  // namespace rmpf::toy
