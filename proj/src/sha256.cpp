#include "rmpf/sha256.hpp"

#include <openssl/evp.h>

#include "rmpf/error.hpp"

namespace rmpf {

struct Sha256::Impl {
  EVP_MD_CTX* ctx = nullptr;

  Impl() : ctx(EVP_MD_CTX_new()) {
    if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
      EVP_MD_CTX_free(ctx);
      throw Error("SHA-256 initialisation failed");
    }
  }
  Impl(const Impl& other) : ctx(EVP_MD_CTX_new()) {
    if (ctx == nullptr || EVP_MD_CTX_copy_ex(ctx, other.ctx) != 1) {
      EVP_MD_CTX_free(ctx);
      throw Error("SHA-256 context copy failed");
    }
  }
  Impl& operator=(const Impl&) = delete;
  ~Impl() { EVP_MD_CTX_free(ctx); }
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {}
Sha256::~Sha256() = default;
Sha256::Sha256(const Sha256& other)
    : impl_(std::make_unique<Impl>(*other.impl_)) {}
Sha256& Sha256::operator=(const Sha256& other) {
  if (this != &other) impl_ = std::make_unique<Impl>(*other.impl_);
  return *this;
}
Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&&) noexcept = default;

Sha256& Sha256::update(std::span<const std::uint8_t> data) {
  if (EVP_DigestUpdate(impl_->ctx, data.data(), data.size()) != 1) {
    throw Error("SHA-256 update failed");
  }
  return *this;
}

Sha256& Sha256::update(std::string_view text) {
  return update(std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                          text.size()));
}

Digest Sha256::digest() const {
  Impl copy(*impl_);
  Digest out{};
  unsigned len = 0;
  if (EVP_DigestFinal_ex(copy.ctx, out.data(), &len) != 1 || len != out.size()) {
    throw Error("SHA-256 finalisation failed");
  }
  return out;
}

Digest Sha256::hash(std::span<const std::uint8_t> data) {
  Sha256 h;
  h.update(data);
  return h.digest();
}

}  // namespace rmpf
