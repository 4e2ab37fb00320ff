#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "rmpf/bytes.hpp"
#include "rmpf/matrix.hpp"
#include "rmpf/sha256.hpp"

namespace rmpf {

/// Shared public context: prime, shape, Base and the public exponent
/// matrices X and Y (kept reduced mod p - 1).
class PublicParams {
 public:
  /// Throws InvalidArgument if the matrices disagree on dims or modulus.
  PublicParams(BaseMatrix base, ExpMatrix x, ExpMatrix y);

  const Modulus& modulus() const noexcept { return base_.modulus(); }
  const Dims& dims() const noexcept { return base_.dims(); }
  const BaseMatrix& base() const noexcept { return base_; }
  const ExpMatrix& x() const noexcept { return x_; }
  const ExpMatrix& y() const noexcept { return y_; }

  friend bool operator==(const PublicParams&, const PublicParams&) = default;

 private:
  BaseMatrix base_;
  ExpMatrix x_;
  ExpMatrix y_;
};

/// Fresh prime of `p_bits` bits and uniform random Base, X, Y.
PublicParams setup(unsigned p_bits, Dims dims, Rng& rng);

/// Same as setup() but with a caller-chosen prime.
PublicParams setup(Modulus mod, Dims dims, Rng& rng);

/// Secret scalars and the exponent matrices they induce:
/// a = lambda * X, b = omega * Y (mod p - 1).
class PrivateKey {
 public:
  /// No range checks: replays fixed scalars and degenerate cases.
  static PrivateKey from_scalars(const PublicParams& params,
                                 std::uint64_t lambda, std::uint64_t omega);

  std::uint64_t lambda() const noexcept { return lambda_; }
  std::uint64_t omega() const noexcept { return omega_; }
  const ExpMatrix& a() const noexcept { return a_; }
  const ExpMatrix& b() const noexcept { return b_; }

 private:
  PrivateKey(std::uint64_t lambda, std::uint64_t omega, ExpMatrix a,
             ExpMatrix b);

  std::uint64_t lambda_;
  std::uint64_t omega_;
  ExpMatrix a_;
  ExpMatrix b_;
};

/// lambda, omega uniform in [1, p-2]. Pairs with lambda * omega = 0 mod p - 1
/// are redrawn since they produce the all-ones token.
PrivateKey gen_private(const PublicParams& params, Rng& rng);

struct Token {
  BaseMatrix matrix;

  /// Binds a decoded matrix to the params. Throws ProtocolError on a shape
  /// mismatch or an entry outside [1, p-1].
  static Token from_raw(const PublicParams& params, const RawMatrix& raw);

  friend bool operator==(const Token&, const Token&) = default;
};

using SessionKey = Digest;

struct SharedKey {
  BaseMatrix matrix;
  SessionKey session_key;
};

Token make_token(const PublicParams& params, const PrivateKey& priv);

/// Two-sided action of the private matrices on the peer token, then kdf().
/// Throws InvalidArgument if the token does not belong to `params`.
SharedKey derive_key(const PublicParams& params, const PrivateKey& priv,
                     const Token& peer, const Digest& transcript_hash = {});

/// SHA-256("RMPF-KAP-v1" || transcript_hash || canonical matrix || u64 p).
SessionKey kdf(const BaseMatrix& key_matrix, const Digest& transcript_hash);

// Parameter blob: "RMPF", version 0x01, u64 p, then Base, X, Y in canonical
// matrix encoding.

inline constexpr std::string_view kParamsMagic = "RMPF";
inline constexpr std::uint8_t kParamsVersion = 0x01;

Bytes encode_params(const PublicParams& params);

/// Validates everything: magic, version, primality of p, m > n, unit Base
/// entries, X/Y entries below p - 1, no trailing bytes. Throws ParseError
/// (or InvalidModulus / InvalidArgument for semantic violations).
PublicParams decode_params(std::span<const std::uint8_t> blob);

/// Text armor around the binary blob.
std::string armor_params(const PublicParams& params);

/// Accepts either the raw blob or the armored text.
PublicParams load_params(std::span<const std::uint8_t> file_contents);

/// SHA-256 of the encoded blob.
Digest params_fingerprint(const PublicParams& params);

}  // namespace rmpf
