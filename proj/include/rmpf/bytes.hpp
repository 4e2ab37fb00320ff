#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace rmpf {

using Bytes = std::vector<std::uint8_t>;

/// Appends big-endian integers to a byte buffer.
class ByteWriter {
 public:
  explicit ByteWriter(Bytes& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void raw(std::span<const std::uint8_t> data);
  void raw(std::string_view text);

 private:
  Bytes& out_;
};

/// Bounds-checked big-endian reader. Throws ParseError when input runs out.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  std::span<const std::uint8_t> raw(std::size_t n);

  std::size_t remaining() const noexcept { return in_.size() - pos_; }
  bool done() const noexcept { return remaining() == 0; }

 private:
  void need(std::size_t n) const;

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace rmpf
