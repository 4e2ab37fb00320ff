#include "rmpf/matrix.hpp"

#include <limits>
#include <string>

#include "rmpf/error.hpp"

namespace rmpf {

namespace {

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return a >= n - b ? a - (n - b) : a + b;
}

void require_same_context(const detail::MatrixStorage& a,
                          const detail::MatrixStorage& b, const char* op) {
  if (!(a.dims() == b.dims())) {
    throw InvalidArgument(std::string(op) + ": dimension mismatch");
  }
  if (!(a.modulus() == b.modulus())) {
    throw InvalidArgument(std::string(op) + ": modulus mismatch");
  }
}

}  // namespace

Dims Dims::checked(std::size_t m, std::size_t n) {
  constexpr std::size_t kMax = std::numeric_limits<std::uint16_t>::max();
  if (n < 1 || m <= n) {
    throw InvalidArgument("dimensions (" + std::to_string(m) + ", " +
                          std::to_string(n) + ") must satisfy m > n >= 1");
  }
  if (m > kMax) throw InvalidArgument("row count exceeds 65535");
  return Dims{m, n};
}

namespace detail {

MatrixStorage::MatrixStorage(Dims dims, Modulus mod,
                             std::vector<std::uint64_t> entries)
    : dims_(Dims::checked(dims.m, dims.n)),
      mod_(mod),
      entries_(std::move(entries)) {
  if (entries_.size() != dims_.size()) {
    throw InvalidArgument("matrix needs " + std::to_string(dims_.size()) +
                          " entries, got " + std::to_string(entries_.size()));
  }
}

}  // namespace detail

BaseMatrix::BaseMatrix(Dims dims, Modulus mod,
                       std::vector<std::uint64_t> entries)
    : MatrixStorage(dims, mod, std::move(entries)) {
  for (std::uint64_t v : entries_) {
    if (v == 0 || v >= mod_.p()) {
      throw ParseError("base-side entry " + std::to_string(v) +
                       " outside [1, p-1]");
    }
  }
}

BaseMatrix BaseMatrix::ones(Dims dims, Modulus mod) {
  return BaseMatrix(dims, mod, std::vector<std::uint64_t>(dims.size(), 1));
}

BaseMatrix BaseMatrix::random(Dims dims, Modulus mod, Rng& rng) {
  std::vector<std::uint64_t> entries(dims.size());
  for (auto& v : entries) v = rng.uniform(1, mod.p() - 1);
  return BaseMatrix(dims, mod, std::move(entries));
}

ExpMatrix::ExpMatrix(Dims dims, Modulus mod, std::vector<std::uint64_t> entries)
    : MatrixStorage(dims, mod, std::move(entries)) {
  for (std::uint64_t v : entries_) {
    if (v >= mod_.q()) {
      throw ParseError("exponent entry " + std::to_string(v) +
                       " outside [0, p-2]");
    }
  }
}

ExpMatrix ExpMatrix::reduce(Dims dims, Modulus mod,
                            std::span<const std::uint64_t> raw) {
  std::vector<std::uint64_t> entries(raw.begin(), raw.end());
  for (auto& v : entries) v %= mod.q();
  return ExpMatrix(dims, mod, std::move(entries));
}

ExpMatrix ExpMatrix::zeros(Dims dims, Modulus mod) {
  return ExpMatrix(dims, mod, std::vector<std::uint64_t>(dims.size(), 0));
}

ExpMatrix ExpMatrix::identity_embedded(Dims dims, Modulus mod) {
  std::vector<std::uint64_t> entries(dims.size(), 0);
  for (std::size_t k = 0; k < dims.n; ++k) entries[k * dims.n + k] = 1;
  return ExpMatrix(dims, mod, std::move(entries));
}

ExpMatrix ExpMatrix::random(Dims dims, Modulus mod, Rng& rng) {
  std::vector<std::uint64_t> entries(dims.size());
  for (auto& v : entries) v = rng.uniform(0, mod.p() - 1) % mod.q();
  return ExpMatrix(dims, mod, std::move(entries));
}

BaseMatrix left_action(const ExpMatrix& x, const BaseMatrix& w) {
  require_same_context(x, w, "left_action");
  const auto [m, n] = x.dims();
  const std::uint64_t p = w.modulus().p();
  std::vector<std::uint64_t> out(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 1;
      for (std::size_t k = 0; k < n; ++k) {
        acc = mod_mul(acc, mod_pow(w(k, j), x(i, k), p), p);
      }
      out[i * n + j] = acc;
    }
  }
  return BaseMatrix(x.dims(), w.modulus(), std::move(out));
}

BaseMatrix right_action(const BaseMatrix& w, const ExpMatrix& y) {
  require_same_context(w, y, "right_action");
  const auto [m, n] = w.dims();
  const std::uint64_t p = w.modulus().p();
  std::vector<std::uint64_t> out(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 1;
      for (std::size_t l = 0; l < n; ++l) {
        acc = mod_mul(acc, mod_pow(w(i, l), y(l, j), p), p);
      }
      out[i * n + j] = acc;
    }
  }
  return BaseMatrix(w.dims(), w.modulus(), std::move(out));
}

BaseMatrix two_sided_action(const ExpMatrix& x, const BaseMatrix& w,
                            const ExpMatrix& y) {
  require_same_context(x, w, "two_sided_action");
  require_same_context(w, y, "two_sided_action");
  const auto [m, n] = w.dims();
  const std::uint64_t p = w.modulus().p();

  // Right action on the top n rows only; the left action never reads the rest.
  std::vector<std::uint64_t> inner(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 1;
      for (std::size_t l = 0; l < n; ++l) {
        acc = mod_mul(acc, mod_pow(w(k, l), y(l, j), p), p);
      }
      inner[k * n + j] = acc;
    }
  }

  std::vector<std::uint64_t> out(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 1;
      for (std::size_t k = 0; k < n; ++k) {
        acc = mod_mul(acc, mod_pow(inner[k * n + j], x(i, k), p), p);
      }
      out[i * n + j] = acc;
    }
  }
  return BaseMatrix(w.dims(), w.modulus(), std::move(out));
}

BaseMatrix two_sided_action_naive(const ExpMatrix& x, const BaseMatrix& w,
                                  const ExpMatrix& y) {
  require_same_context(x, w, "two_sided_action_naive");
  require_same_context(w, y, "two_sided_action_naive");
  const auto [m, n] = w.dims();
  const std::uint64_t p = w.modulus().p();
  const std::uint64_t q = w.modulus().q();
  std::vector<std::uint64_t> out(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 1;
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          const std::uint64_t e = mod_mul(x(i, k), y(l, j), q);
          acc = mod_mul(acc, mod_pow(w(k, l), e, p), p);
        }
      }
      out[i * n + j] = acc;
    }
  }
  return BaseMatrix(w.dims(), w.modulus(), std::move(out));
}

ExpMatrix scalar_mul(std::uint64_t lambda, const ExpMatrix& x) {
  const std::uint64_t q = x.modulus().q();
  lambda %= q;
  std::vector<std::uint64_t> out(x.entries().begin(), x.entries().end());
  for (auto& v : out) v = mod_mul(lambda, v, q);
  return ExpMatrix(x.dims(), x.modulus(), std::move(out));
}

bool commutes(const ExpMatrix& x, const ExpMatrix& u) {
  require_same_context(x, u, "commutes");
  const auto [m, n] = x.dims();
  const std::uint64_t q = x.modulus().q();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::uint64_t xu = 0;
      std::uint64_t ux = 0;
      for (std::size_t i = 0; i < m; ++i) {
        xu = add_mod(xu, mod_mul(x(i, a), u(i, b), q), q);
        ux = add_mod(ux, mod_mul(u(i, a), x(i, b), q), q);
      }
      if (xu != ux) return false;
    }
  }
  return true;
}

ExpMatrix compose_left(const ExpMatrix& y, const ExpMatrix& x) {
  require_same_context(y, x, "compose_left");
  const auto [m, n] = y.dims();
  const std::uint64_t q = y.modulus().q();
  std::vector<std::uint64_t> out(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t acc = 0;
      for (std::size_t t = 0; t < n; ++t) {
        acc = add_mod(acc, mod_mul(y(i, t), x(t, k), q), q);
      }
      out[i * n + k] = acc;
    }
  }
  return ExpMatrix(y.dims(), y.modulus(), std::move(out));
}

ExpMatrix compose_right(const ExpMatrix& x, const ExpMatrix& y) {
  require_same_context(x, y, "compose_right");
  const auto [m, n] = x.dims();
  const std::uint64_t q = x.modulus().q();
  std::vector<std::uint64_t> out(m * n, 0);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t t = 0; t < n; ++t) {
        acc = add_mod(acc, mod_mul(x(l, t), y(t, j), q), q);
      }
      out[l * n + j] = acc;
    }
  }
  return ExpMatrix(x.dims(), x.modulus(), std::move(out));
}

void encode_matrix(ByteWriter& out, const detail::MatrixStorage& mat) {
  out.u16(static_cast<std::uint16_t>(mat.dims().m));
  out.u16(static_cast<std::uint16_t>(mat.dims().n));
  for (std::uint64_t v : mat.entries()) out.u64(v);
}

Bytes encode_matrix(const detail::MatrixStorage& mat) {
  Bytes out;
  out.reserve(4 + 8 * mat.entries().size());
  ByteWriter w(out);
  encode_matrix(w, mat);
  return out;
}

RawMatrix decode_matrix(ByteReader& in) {
  RawMatrix raw;
  raw.m = in.u16();
  raw.n = in.u16();
  const std::size_t count = raw.m * raw.n;
  if (in.remaining() / 8 < count) {
    throw ParseError("matrix blob declares " + std::to_string(count) +
                     " entries but only " + std::to_string(in.remaining()) +
                     " bytes remain");
  }
  raw.entries.resize(count);
  for (auto& v : raw.entries) v = in.u64();
  return raw;
}

}  // namespace rmpf
