#include "rmpf/stream.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>

#include "rmpf/error.hpp"

namespace rmpf {

namespace {

// One direction of an in-memory pipe.
struct Channel {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::uint8_t> data;
  bool closed = false;
};

class MemoryStream final : public ByteStream {
 public:
  MemoryStream(std::shared_ptr<Channel> in, std::shared_ptr<Channel> out)
      : in_(std::move(in)), out_(std::move(out)) {}

  ~MemoryStream() override {
    close();
    std::lock_guard lock(in_->mu);
    in_->closed = true;
  }

  void write(std::span<const std::uint8_t> data) override {
    std::lock_guard lock(out_->mu);
    if (out_->closed) throw ConnectionError("write on closed pipe");
    out_->data.insert(out_->data.end(), data.begin(), data.end());
    out_->cv.notify_all();
  }

  std::size_t read_some(std::span<std::uint8_t> buf,
                        std::chrono::milliseconds timeout) override {
    std::unique_lock lock(in_->mu);
    const bool ready = in_->cv.wait_for(
        lock, timeout, [&] { return !in_->data.empty() || in_->closed; });
    if (!ready) throw ConnectionError("read timed out");
    const std::size_t n = std::min(buf.size(), in_->data.size());
    std::copy_n(in_->data.begin(), n, buf.begin());
    in_->data.erase(in_->data.begin(), in_->data.begin() + n);
    return n;
  }

  void close() override {
    std::lock_guard lock(out_->mu);
    out_->closed = true;
    out_->cv.notify_all();
  }

 private:
  std::shared_ptr<Channel> in_;
  std::shared_ptr<Channel> out_;
};

class TcpStream final : public ByteStream {
 public:
  explicit TcpStream(int fd) : fd_(fd) {
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  }
  ~TcpStream() override { ::close(fd_); }
  TcpStream(const TcpStream&) = delete;
  TcpStream& operator=(const TcpStream&) = delete;

  void write(std::span<const std::uint8_t> data) override {
    while (!data.empty()) {
      const ssize_t n = ::send(fd_, data.data(), data.size(), MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ConnectionError(std::string("send: ") + std::strerror(errno));
      }
      data = data.subspan(static_cast<std::size_t>(n));
    }
  }

  std::size_t read_some(std::span<std::uint8_t> buf,
                        std::chrono::milliseconds timeout) override {
    pollfd pfd{fd_, POLLIN, 0};
    for (;;) {
      const int rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
      if (rc < 0 && errno == EINTR) continue;
      if (rc < 0) {
        throw ConnectionError(std::string("poll: ") + std::strerror(errno));
      }
      if (rc == 0) throw ConnectionError("read timed out");
      break;
    }
    for (;;) {
      const ssize_t n = ::recv(fd_, buf.data(), buf.size(), 0);
      if (n < 0 && errno == EINTR) continue;
      if (n < 0) {
        throw ConnectionError(std::string("recv: ") + std::strerror(errno));
      }
      return static_cast<std::size_t>(n);
    }
  }

  void close() override { ::shutdown(fd_, SHUT_WR); }

 private:
  int fd_;
};

}  // namespace

std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>>
make_memory_pipe() {
  auto a_to_b = std::make_shared<Channel>();
  auto b_to_a = std::make_shared<Channel>();
  return {std::make_unique<MemoryStream>(b_to_a, a_to_b),
          std::make_unique<MemoryStream>(a_to_b, b_to_a)};
}

TcpListener::TcpListener(const std::string& host, std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) {
    throw ConnectionError(std::string("socket: ") + std::strerror(errno));
  }
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd_);
    throw ConnectionError("cannot parse listen address " + host);
  }
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(fd_, 64) != 0) {
    const std::string msg = std::strerror(errno);
    ::close(fd_);
    throw ConnectionError("bind/listen on " + host + ":" +
                          std::to_string(port) + ": " + msg);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() { ::close(fd_); }

std::unique_ptr<ByteStream> TcpListener::accept() {
  for (;;) {
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) return std::make_unique<TcpStream>(fd);
    if (errno != EINTR) {
      throw ConnectionError(std::string("accept: ") + std::strerror(errno));
    }
  }
}

std::unique_ptr<ByteStream> tcp_connect(const std::string& host,
                                        std::uint16_t port,
                                        std::chrono::milliseconds timeout) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res);
      rc != 0) {
    throw ConnectionError("resolve " + host + ": " + ::gai_strerror(rc));
  }
  std::unique_ptr<addrinfo, decltype(&::freeaddrinfo)> guard(res,
                                                             &::freeaddrinfo);

  const int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd < 0) {
    throw ConnectionError(std::string("socket: ") + std::strerror(errno));
  }
  const int flags = ::fcntl(fd, F_GETFL, 0);
  ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
  int rc = ::connect(fd, res->ai_addr, res->ai_addrlen);
  if (rc != 0 && errno == EINPROGRESS) {
    pollfd pfd{fd, POLLOUT, 0};
    rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
    if (rc == 0) {
      ::close(fd);
      throw ConnectionError("connect to " + host + ":" + service +
                            " timed out");
    }
    int err = 0;
    socklen_t len = sizeof(err);
    ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
    errno = err;
    rc = err == 0 ? 0 : -1;
  }
  if (rc != 0) {
    const std::string msg = std::strerror(errno);
    ::close(fd);
    throw ConnectionError("connect to " + host + ":" + service + ": " + msg);
  }
  ::fcntl(fd, F_SETFL, flags);
  return std::make_unique<TcpStream>(fd);
}

}  // namespace rmpf
