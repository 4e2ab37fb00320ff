#include "rmpf/kap.hpp"

#include <algorithm>

#include "rmpf/error.hpp"
#include "rmpf/hex.hpp"

namespace rmpf {

namespace {

constexpr std::string_view kKdfLabel = "RMPF-KAP-v1";
constexpr std::string_view kArmorBegin = "-----BEGIN RMPF PARAMS-----";
constexpr std::string_view kArmorEnd = "-----END RMPF PARAMS-----";

void require_params_context(const PublicParams& params,
                            const detail::MatrixStorage& mat,
                            const char* what) {
  if (!(mat.dims() == params.dims()) || !(mat.modulus() == params.modulus())) {
    throw InvalidArgument(std::string(what) +
                          " does not match the public parameters");
  }
}

Dims raw_dims(const RawMatrix& raw) { return Dims::checked(raw.m, raw.n); }

}  // namespace

PublicParams::PublicParams(BaseMatrix base, ExpMatrix x, ExpMatrix y)
    : base_(std::move(base)), x_(std::move(x)), y_(std::move(y)) {
  require_params_context(*this, x_, "X");
  require_params_context(*this, y_, "Y");
}

PublicParams setup(unsigned p_bits, Dims dims, Rng& rng) {
  const Dims checked = Dims::checked(dims.m, dims.n);
  Modulus mod = generate_prime(p_bits, rng);
  return setup(mod, checked, rng);
}

PublicParams setup(Modulus mod, Dims dims, Rng& rng) {
  const Dims checked = Dims::checked(dims.m, dims.n);
  BaseMatrix base = BaseMatrix::random(checked, mod, rng);
  ExpMatrix x = ExpMatrix::random(checked, mod, rng);
  ExpMatrix y = ExpMatrix::random(checked, mod, rng);
  return PublicParams(std::move(base), std::move(x), std::move(y));
}

PrivateKey::PrivateKey(std::uint64_t lambda, std::uint64_t omega, ExpMatrix a,
                       ExpMatrix b)
    : lambda_(lambda), omega_(omega), a_(std::move(a)), b_(std::move(b)) {}

PrivateKey PrivateKey::from_scalars(const PublicParams& params,
                                    std::uint64_t lambda,
                                    std::uint64_t omega) {
  return PrivateKey(lambda, omega, scalar_mul(lambda, params.x()),
                    scalar_mul(omega, params.y()));
}

PrivateKey gen_private(const PublicParams& params, Rng& rng) {
  const std::uint64_t q = params.modulus().q();
  for (;;) {
    const std::uint64_t lambda = rng.uniform(1, q - 1);
    const std::uint64_t omega = rng.uniform(1, q - 1);
    if (mod_mul(lambda, omega, q) != 0) {
      return PrivateKey::from_scalars(params, lambda, omega);
    }
  }
}

Token Token::from_raw(const PublicParams& params, const RawMatrix& raw) {
  if (raw.m != params.dims().m || raw.n != params.dims().n) {
    throw ProtocolError("malformed token: shape does not match parameters");
  }
  try {
    return Token{BaseMatrix(params.dims(), params.modulus(), raw.entries)};
  } catch (const ParseError& e) {
    throw ProtocolError(std::string("malformed token: ") + e.what());
  }
}

Token make_token(const PublicParams& params, const PrivateKey& priv) {
  require_params_context(params, priv.a(), "private key");
  return Token{two_sided_action(priv.a(), params.base(), priv.b())};
}

SharedKey derive_key(const PublicParams& params, const PrivateKey& priv,
                     const Token& peer, const Digest& transcript_hash) {
  require_params_context(params, peer.matrix, "peer token");
  require_params_context(params, priv.a(), "private key");
  BaseMatrix key = two_sided_action(priv.a(), peer.matrix, priv.b());
  SessionKey session = kdf(key, transcript_hash);
  return SharedKey{std::move(key), session};
}

SessionKey kdf(const BaseMatrix& key_matrix, const Digest& transcript_hash) {
  Bytes tail;
  ByteWriter w(tail);
  encode_matrix(w, key_matrix);
  w.u64(key_matrix.modulus().p());
  Sha256 h;
  h.update(kKdfLabel).update(transcript_hash).update(tail);
  return h.digest();
}

Bytes encode_params(const PublicParams& params) {
  Bytes out;
  ByteWriter w(out);
  w.raw(kParamsMagic);
  w.u8(kParamsVersion);
  w.u64(params.modulus().p());
  encode_matrix(w, params.base());
  encode_matrix(w, params.x());
  encode_matrix(w, params.y());
  return out;
}

PublicParams decode_params(std::span<const std::uint8_t> blob) {
  ByteReader in(blob);
  auto magic = in.raw(kParamsMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kParamsMagic.begin())) {
    throw ParseError("bad parameter magic");
  }
  if (const auto version = in.u8(); version != kParamsVersion) {
    throw ParseError("unsupported parameter version " +
                     std::to_string(version));
  }
  const Modulus mod(in.u64());
  const RawMatrix base = decode_matrix(in);
  const RawMatrix x = decode_matrix(in);
  const RawMatrix y = decode_matrix(in);
  if (!in.done()) throw ParseError("trailing bytes after parameter blob");
  const Dims dims = raw_dims(base);
  if (x.m != dims.m || x.n != dims.n || y.m != dims.m || y.n != dims.n) {
    throw ParseError("parameter matrices disagree on dimensions");
  }
  return PublicParams(BaseMatrix(dims, mod, base.entries),
                      ExpMatrix(dims, mod, x.entries),
                      ExpMatrix(dims, mod, y.entries));
}

std::string armor_params(const PublicParams& params) {
  const std::string hex = to_hex(encode_params(params));
  std::string out(kArmorBegin);
  out += '\n';
  for (std::size_t i = 0; i < hex.size(); i += 64) {
    out += hex.substr(i, 64);
    out += '\n';
  }
  out += kArmorEnd;
  out += '\n';
  return out;
}

PublicParams load_params(std::span<const std::uint8_t> file_contents) {
  const std::string_view text(
      reinterpret_cast<const char*>(file_contents.data()),
      file_contents.size());
  const auto begin = text.find(kArmorBegin);
  if (begin == std::string_view::npos) return decode_params(file_contents);
  const auto body_start = begin + kArmorBegin.size();
  const auto end = text.find(kArmorEnd, body_start);
  if (end == std::string_view::npos) throw ParseError("unterminated armor");
  auto blob = from_hex(text.substr(body_start, end - body_start));
  if (!blob) throw ParseError("armored parameters are not valid hex");
  return decode_params(*blob);
}

Digest params_fingerprint(const PublicParams& params) {
  return Sha256::hash(encode_params(params));
}

}  // namespace rmpf
