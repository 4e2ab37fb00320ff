#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>

namespace rmpf {

/// Ordered, reliable, bidirectional byte channel.
class ByteStream {
 public:
  virtual ~ByteStream() = default;

  /// Writes all of `data`. Throws ConnectionError if the peer is gone.
  virtual void write(std::span<const std::uint8_t> data) = 0;

  /// Reads at least one byte into `buf`; returns 0 on orderly EOF. Throws
  /// ConnectionError on timeout or transport failure.
  virtual std::size_t read_some(std::span<std::uint8_t> buf,
                                std::chrono::milliseconds timeout) = 0;

  /// Half-closes the write side; the peer sees EOF after draining.
  virtual void close() = 0;
};

/// Two connected in-process endpoints.
std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>>
make_memory_pipe();

class TcpListener {
 public:
  /// Binds to `host`:`port` (port 0 picks an ephemeral port) and listens.
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const noexcept { return port_; }

  /// Blocks until a client connects.
  std::unique_ptr<ByteStream> accept();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

/// Throws ConnectionError if the connection is refused or times out.
std::unique_ptr<ByteStream> tcp_connect(const std::string& host,
                                        std::uint16_t port,
                                        std::chrono::milliseconds timeout);

}  // namespace rmpf
