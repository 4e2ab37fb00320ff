#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rmpf/bytes.hpp"
#include "rmpf/modarith.hpp"

namespace rmpf {

/// Shape of every matrix in one protocol instance. Always m > n >= 1.
struct Dims {
  std::size_t m;
  std::size_t n;

  /// Throws InvalidArgument unless m > n >= 1 and both fit in 16 bits.
  static Dims checked(std::size_t m, std::size_t n);

  std::size_t size() const noexcept { return m * n; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

namespace detail {

/// Row-major storage shared by the two matrix kinds.
class MatrixStorage {
 public:
  const Dims& dims() const noexcept { return dims_; }
  const Modulus& modulus() const noexcept { return mod_; }
  std::span<const std::uint64_t> entries() const noexcept { return entries_; }

  /// Zero-based (row, col).
  std::uint64_t operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * dims_.n + j];
  }

 protected:
  MatrixStorage(Dims dims, Modulus mod, std::vector<std::uint64_t> entries);

  Dims dims_;
  Modulus mod_;
  std::vector<std::uint64_t> entries_;
};

}  // namespace detail

/// Multiplicative-side matrix: every entry is a unit of Z_p, i.e. in [1, p-1].
/// Used for the public base, tokens and shared keys.
class BaseMatrix : public detail::MatrixStorage {
 public:
  /// Throws ParseError if an entry is 0 or >= p, InvalidArgument on a size
  /// mismatch.
  BaseMatrix(Dims dims, Modulus mod, std::vector<std::uint64_t> entries);

  static BaseMatrix ones(Dims dims, Modulus mod);
  static BaseMatrix random(Dims dims, Modulus mod, Rng& rng);

  friend bool operator==(const BaseMatrix& a, const BaseMatrix& b) {
    return a.dims_ == b.dims_ && a.mod_ == b.mod_ && a.entries_ == b.entries_;
  }
};

/// Exponent-side matrix: entries in Z_{p-1}, i.e. in [0, p-2].
class ExpMatrix : public detail::MatrixStorage {
 public:
  /// Throws ParseError if an entry is >= p - 1.
  ExpMatrix(Dims dims, Modulus mod, std::vector<std::uint64_t> entries);

  /// Reduces arbitrary 64-bit values mod p - 1.
  static ExpMatrix reduce(Dims dims, Modulus mod,
                          std::span<const std::uint64_t> raw);
  static ExpMatrix zeros(Dims dims, Modulus mod);
  /// Top n x n block is the identity, remaining rows zero.
  static ExpMatrix identity_embedded(Dims dims, Modulus mod);
  /// Uniform over [0, p-1] then reduced mod p - 1, as public X and Y are drawn.
  static ExpMatrix random(Dims dims, Modulus mod, Rng& rng);

  friend bool operator==(const ExpMatrix& a, const ExpMatrix& b) {
    return a.dims_ == b.dims_ && a.mod_ == b.mod_ && a.entries_ == b.entries_;
  }
};

// Matrix power actions. Every product index runs over 1..n (the column
// count), so only the top n rows of the "inner" operand participate.

/// c_ij = prod_k w_kj ^ x_ik
BaseMatrix left_action(const ExpMatrix& x, const BaseMatrix& w);

/// d_ij = prod_l w_il ^ y_lj
BaseMatrix right_action(const BaseMatrix& w, const ExpMatrix& y);

/// q_ij = prod_k prod_l w_kl ^ (x_ik * y_lj). Evaluated as
/// left_action(x, right_action(w, y)) restricted to the rows that matter:
/// n^3 + m*n^2 modular exponentiations.
BaseMatrix two_sided_action(const ExpMatrix& x, const BaseMatrix& w,
                            const ExpMatrix& y);

/// Direct triple-loop evaluation of the two-sided action, m*n^3
/// exponentiations. Kept as a reference for the factored path.
BaseMatrix two_sided_action_naive(const ExpMatrix& x, const BaseMatrix& w,
                                  const ExpMatrix& y);

/// Entry-wise (lambda * x_ij) mod (p - 1).
ExpMatrix scalar_mul(std::uint64_t lambda, const ExpMatrix& x);

/// True iff X^T * U == U^T * X (ordinary products, n x n) mod p - 1.
bool commutes(const ExpMatrix& x, const ExpMatrix& u);

/// Z with left_action(Z, W) == left_action(y, left_action(x, W)):
/// z_ik = sum_k' y_ik' * x_k'k over the top n x n block of x.
ExpMatrix compose_left(const ExpMatrix& y, const ExpMatrix& x);

/// Z with right_action(W, Z) == right_action(right_action(W, x), y):
/// top n rows are x_top * y_top, remaining rows zero.
ExpMatrix compose_right(const ExpMatrix& x, const ExpMatrix& y);

/// Canonical encoding: u16 m, u16 n, m*n u64 entries, all big-endian,
/// row-major. The modulus is not part of the blob.
void encode_matrix(ByteWriter& out, const detail::MatrixStorage& mat);
Bytes encode_matrix(const detail::MatrixStorage& mat);

/// Raw decoded matrix before it is bound to a modulus.
struct RawMatrix {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::uint64_t> entries;
};

/// Reads one canonical matrix. Throws ParseError on truncation. Shape is
/// not validated beyond the entry count; the caller binds it to a context.
RawMatrix decode_matrix(ByteReader& in);

}  // namespace rmpf
