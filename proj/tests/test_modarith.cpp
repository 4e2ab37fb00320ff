#include "doctest.h"
#include "oracle.hpp"
#include "rmpf/error.hpp"
#include "rmpf/modarith.hpp"

using namespace rmpf;

TEST_CASE("mod_mul basic values") {
  CHECK(mod_mul(0, 12345, 104729) == 0);
  CHECK(mod_mul(1, 12345, 104729) == 12345);
  // 2^64 mod (2^64 - 59) = 59, computed with the big-integer oracle.
  const std::uint64_t n = testutil::kP64;
  CHECK(oracle::mul_mod(std::uint64_t{1} << 63, 2, n) == 59);
  CHECK(mod_mul(std::uint64_t{1} << 63, 2, n) == 59);
  CHECK_THROWS_AS(mod_mul(1, 2, 0), InvalidModulus);
}

TEST_CASE("mod_mul matches the big-integer product on random triples") {
  auto rng = testutil::rng(1);
  for (int i = 0; i < 100'000; ++i) {
    const std::uint64_t n = rng.uniform(2, ~std::uint64_t{0});
    const std::uint64_t a = rng.uniform(0, n - 1);
    const std::uint64_t b = rng.uniform(0, n - 1);
    const std::uint64_t got = mod_mul(a, b, n);
    REQUIRE(got == mod_mul(b, a, n));
    REQUIRE(got == oracle::mul_mod(a, b, n));
  }
}

TEST_CASE("mod_pow edge cases") {
  CHECK(mod_pow(0, 0, 7) == 1);
  CHECK(mod_pow(5, 0, 7) == 1);
  CHECK(mod_pow(3, 5, 7) == 5);
  for (std::uint64_t a = 1; a < 104729; a += 997) {
    CHECK(mod_pow(a, 104728, 104729) == 1);
  }
  CHECK_THROWS_AS(mod_pow(2, 2, 0), InvalidModulus);
}

TEST_CASE("exponent reduction mod p-1 is sound") {
  auto rng = testutil::rng(2);
  const std::uint64_t p = testutil::kP64;
  const std::uint64_t q = p - 1;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t a = rng.uniform(1, p - 1);
    const std::uint64_t e1 = rng.uniform(0, q - 1);
    const std::uint64_t e2 = rng.uniform(0, q - 1);
    const std::uint64_t lhs = mod_mul(mod_pow(a, e1, p), mod_pow(a, e2, p), p);
    const std::uint64_t sum = e1 >= q - e2 ? e1 - (q - e2) : e1 + e2;
    REQUIRE(lhs == mod_pow(a, sum, p));
    REQUIRE(mod_pow(a, e1, p) ==
            oracle::pow_mod(a, oracle::cpp_int(e1), p));
  }
}

TEST_CASE("is_prime") {
  CHECK(is_prime(104729));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(oracle::trial_division_prime(104731) == false);  // 11 * 9521
  CHECK_FALSE(is_prime(104731));
  CHECK(is_prime(testutil::kP64));
  CHECK(is_prime((std::uint64_t{1} << 61) - 1));
  // Strong pseudoprimes to several small bases.
  CHECK_FALSE(is_prime(3215031751ULL));
  CHECK_FALSE(is_prime(3825123056546413051ULL));
  CHECK_FALSE(is_prime(561));
  CHECK_FALSE(is_prime(~std::uint64_t{0}));
}

TEST_CASE("is_prime agrees with trial division below 200000") {
  for (std::uint64_t n = 0; n < 200'000; ++n) {
    REQUIRE(is_prime(n) == oracle::trial_division_prime(n));
  }
}

TEST_CASE("generate_prime") {
  SUBCASE("8 bits lands in [128, 255]") {
    auto rng = testutil::rng(3);
    for (int i = 0; i < 50; ++i) {
      const Modulus m = generate_prime(8, rng);
      CHECK(m.p() >= 128);
      CHECK(m.p() <= 255);
      CHECK(oracle::trial_division_prime(m.p()));
    }
  }
  SUBCASE("17 bits verified by trial division") {
    auto rng = testutil::rng(4);
    const Modulus m = generate_prime(17, rng);
    CHECK(m.bits() == 17);
    CHECK(oracle::trial_division_prime(m.p()));
  }
  SUBCASE("64 bits has the top bit set") {
    auto rng = testutil::rng(5);
    const Modulus m = generate_prime(64, rng);
    CHECK(m.bits() == 64);
    CHECK(m.q() == m.p() - 1);
  }
  SUBCASE("same seed, same prime") {
    auto a = testutil::rng(6);
    auto b = testutil::rng(6);
    CHECK(generate_prime(64, a) == generate_prime(64, b));
  }
  SUBCASE("bit length out of range") {
    auto rng = testutil::rng(7);
    CHECK_THROWS_AS(generate_prime(7, rng), InvalidArgument);
    CHECK_THROWS_AS(generate_prime(65, rng), InvalidArgument);
  }
}

TEST_CASE("Modulus validation") {
  CHECK_THROWS_AS(Modulus(4), InvalidModulus);
  CHECK_THROWS_AS(Modulus(3), InvalidModulus);
  CHECK_THROWS_AS(Modulus(104731), InvalidModulus);
  const Modulus m(104729);
  CHECK(m.q() == 104728);
  CHECK(m.bits() == 17);
}

TEST_CASE("Rng is deterministic and bounded") {
  auto a = testutil::rng(9);
  auto b = testutil::rng(9);
  for (int i = 0; i < 100; ++i) REQUIRE(a() == b());
  for (int i = 0; i < 10'000; ++i) {
    const auto v = a.uniform(3, 9);
    REQUIRE(v >= 3);
    REQUIRE(v <= 9);
  }
  CHECK(parse_seed(std::string(64, 'a')).has_value());
  CHECK_FALSE(parse_seed(std::string(62, 'a')).has_value());
  CHECK_FALSE(parse_seed(std::string(63, 'a') + "g").has_value());
}
