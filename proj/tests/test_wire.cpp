#include <thread>

#include "doctest.h"
#include "oracle.hpp"
#include "rmpf/error.hpp"
#include "rmpf/toy_example.hpp"
#include "rmpf/wire.hpp"
#include "wire_harness.hpp"

using namespace rmpf;
using namespace rmpf::wire;
using namespace std::chrono_literals;

namespace {

PublicParams params64(std::uint64_t tag) {
  auto rng = testutil::rng(tag);
  return setup(Modulus(testutil::kP64), Dims{5, 3}, rng);
}

Frame read_one(ByteStream& s) {
  Bytes buf;
  std::array<std::uint8_t, 1024> chunk;
  for (;;) {
    auto r = decode_frame(buf);
    if (auto* d = std::get_if<Decoded>(&r)) return d->frame;
    const auto n = s.read_some(chunk, 2s);
    if (n == 0) throw ConnectionError("eof");
    buf.insert(buf.end(), chunk.begin(), chunk.begin() + n);
  }
}

}  // namespace

TEST_CASE("frame layout") {
  CHECK(encode_frame(Frame{MsgType::kError, {}}) == Bytes{0, 0, 0, 0, 0x7F});
  CHECK(encode_frame(Frame{MsgType::kTokenR, {0xAB, 0xCD}}) ==
        Bytes{0, 0, 0, 2, 0x03, 0xAB, 0xCD});
  CHECK_THROWS_AS(encode_frame(Frame{MsgType::kParams, Bytes(kMaxPayload + 1)}),
                  ProtocolError);
  CHECK_NOTHROW(encode_frame(Frame{MsgType::kParams, Bytes(kMaxPayload)}));
}

TEST_CASE("frame decode errors and partial input") {
  CHECK(std::get<NeedMore>(decode_frame(Bytes{0, 0})).bytes == 3);
  CHECK(std::get<NeedMore>(decode_frame(Bytes{0, 0, 0, 4, 1, 9})).bytes == 3);
  CHECK_THROWS_AS(decode_frame(Bytes{0, 0x20, 0, 0, 0x01}), ProtocolError);
  CHECK_THROWS_AS(decode_frame(Bytes{0, 0, 0, 0, 0x06}), ProtocolError);
  CHECK_THROWS_AS(decode_frame(Bytes{0, 0, 0, 0, 0x00}), ProtocolError);
  const auto d = std::get<Decoded>(decode_frame(Bytes{0, 0, 0, 1, 0x05, 7, 99}));
  CHECK(d.consumed == 6);
  CHECK(d.frame == Frame{MsgType::kConfirmR, {7}});
}

TEST_CASE("frame round trip on random frames") {
  auto rng = testutil::rng(30);
  const MsgType types[] = {MsgType::kParams,   MsgType::kTokenI,
                           MsgType::kTokenR,   MsgType::kConfirmI,
                           MsgType::kConfirmR, MsgType::kError};
  for (int i = 0; i < 2000; ++i) {
    Frame f{types[rng.uniform(0, 5)], Bytes(rng.uniform(0, 300))};
    for (auto& b : f.payload) b = static_cast<std::uint8_t>(rng());
    const Bytes enc = encode_frame(f);
    const auto d = std::get<Decoded>(decode_frame(enc));
    REQUIRE(d.frame == f);
    REQUIRE(d.consumed == enc.size());
  }
  // Largest legal frame.
  const Frame big{MsgType::kParams, Bytes(kMaxPayload, 0x5A)};
  CHECK(std::get<Decoded>(decode_frame(encode_frame(big))).frame == big);
}

TEST_CASE("fuzzed frame decoding never over-reads") {
  auto rng = testutil::rng(31);
  for (int i = 0; i < 10'000; ++i) {
    Bytes junk(rng.uniform(0, 64));
    for (auto& b : junk) b = static_cast<std::uint8_t>(rng());
    if (junk.size() >= 5 && rng.uniform(0, 1)) junk[0] = junk[1] = 0;
    try {
      auto r = decode_frame(junk);
      if (auto* d = std::get_if<Decoded>(&r)) {
        REQUIRE(d->consumed <= junk.size());
        REQUIRE(d->frame.payload.size() + kHeaderSize == d->consumed);
      }
    } catch (const ProtocolError&) {
    }
  }
}

TEST_CASE("handshake over an in-memory pipe") {
  const auto pp = params64(32);
  const auto r = harness::run_pair(pp, 1);
  REQUIRE(r.initiator.outcome == harness::Outcome::kKey);
  REQUIRE(r.responder.outcome == harness::Outcome::kKey);
  CHECK(r.initiator.key->session_key == r.responder.key->session_key);
  CHECK(r.initiator.key->matrix == r.responder.key->matrix);
}

TEST_CASE("handshake with the small reference prime") {
  const auto r = harness::run_pair(toy::params(), 2);
  REQUIRE(r.initiator.outcome == harness::Outcome::kKey);
  CHECK(r.initiator.key->session_key == r.responder.key->session_key);
}

TEST_CASE("tampered token entries fail confirmation on both ends") {
  const auto pp = params64(33);
  auto rng = testutil::rng(34);
  // Token payload: 4 bytes of shape then 15 entries; frame header is 5 bytes.
  const std::size_t first_entry_bit = (kHeaderSize + 4) * 8;
  for (int i = 0; i < 40; ++i) {
    const MsgType type = i % 2 == 0 ? MsgType::kTokenI : MsgType::kTokenR;
    const std::size_t bit = first_entry_bit + rng.uniform(0, 15 * 64 - 1);
    const auto r = harness::run_pair(pp, 100 + i, harness::Tamper{type, bit});
    INFO(to_string(type), " bit ", bit, ": ", r.initiator.error, " / ",
         r.responder.error);
    CHECK(r.initiator.outcome == harness::Outcome::kConfirmFailed);
    CHECK(r.responder.outcome == harness::Outcome::kConfirmFailed);
  }
}

TEST_CASE("tampered frame headers never yield a key") {
  const auto pp = params64(35);
  SessionConfig cfg;
  cfg.timeout = 300ms;
  for (std::size_t bit : {0u, 7u, 20u, 31u, 33u, 38u, 39u, 40u, 47u}) {
    const auto r = harness::run_pair(
        pp, 200 + bit, harness::Tamper{MsgType::kTokenR, bit}, cfg);
    INFO("bit ", bit);
    CHECK(r.initiator.outcome != harness::Outcome::kKey);
    CHECK(r.responder.outcome != harness::Outcome::kKey);
  }
}

TEST_CASE("responder closing after PARAMS") {
  auto pipe = make_memory_pipe();
  auto& i = pipe.first;
  const auto pp = params64(36);
  std::jthread peer([rs = std::move(pipe.second)]() mutable {
    (void)read_one(*rs);
    rs.reset();
  });
  auto rng = testutil::rng(37);
  SessionConfig cfg;
  cfg.timeout = 2s;
  CHECK_THROWS_AS(run_initiator(*i, pp, rng, cfg), ConnectionError);
}

TEST_CASE("initiator timeout when the peer stays silent") {
  auto pipe = make_memory_pipe();
  auto& i = pipe.first;
  auto rng = testutil::rng(38);
  SessionConfig cfg;
  cfg.timeout = 100ms;
  CHECK_THROWS_AS(run_initiator(*i, params64(39), rng, cfg), ConnectionError);
}

TEST_CASE("responder rejects invalid PARAMS with an ERROR frame") {
  const PublicParams pp = toy::params();
  Bytes composite = encode_params(pp);
  composite[12] = 0x1B;  // p = 104731
  Bytes zero_base = encode_params(pp);
  std::fill(zero_base.begin() + 17, zero_base.begin() + 25, 0);

  for (const Bytes& payload : {composite, zero_base}) {
    auto pipe = make_memory_pipe();
    auto& i = pipe.first;
    auto& r = pipe.second;
    auto rng = testutil::rng(40);
    harness::SideResult res;
    std::jthread responder(
        [&] { res = harness::capture([&] { return run_responder(*r, rng); }); });
    i->write(encode_frame(Frame{MsgType::kParams, payload}));
    const Frame reply = read_one(*i);
    CHECK(reply.type == MsgType::kError);
    REQUIRE_FALSE(reply.payload.empty());
    CHECK(reply.payload[0] == static_cast<std::uint8_t>(ErrorCode::kInvalidParams));
    responder.join();
    CHECK(res.outcome == harness::Outcome::kProtocolError);
  }
}

TEST_CASE("out-of-order frame fails the session") {
  auto pipe = make_memory_pipe();
  auto& i = pipe.first;
  auto& r = pipe.second;
  auto rng = testutil::rng(41);
  harness::SideResult res;
  std::jthread responder(
      [&] { res = harness::capture([&] { return run_responder(*r, rng); }); });
  i->write(encode_frame(Frame{MsgType::kTokenI, Bytes(4)}));
  const Frame reply = read_one(*i);
  CHECK(reply.type == MsgType::kError);
  CHECK(reply.payload[0] == static_cast<std::uint8_t>(ErrorCode::kUnexpectedMessage));
  responder.join();
  CHECK(res.outcome == harness::Outcome::kProtocolError);
}

TEST_CASE("session phases are monotone") {
  auto pipe = make_memory_pipe();
  Session s(Role::kInitiator, *pipe.first);
  CHECK(s.phase() == Phase::kStart);
  s.advance(Phase::kParamsExchanged);
  s.advance(Phase::kTokenSent);
  CHECK_THROWS_AS(s.advance(Phase::kParamsExchanged), ProtocolError);
  CHECK(s.phase() == Phase::kFailed);
  CHECK_THROWS_AS(s.send(Frame{MsgType::kConfirmI, {}}), ProtocolError);
}

TEST_CASE("pinned parameters") {
  const auto pp = params64(42);
  const auto other = params64(43);
  SessionConfig cfg;
  cfg.pinned_params = other;
  auto pipe = make_memory_pipe();
  auto& i = pipe.first;
  auto& r = pipe.second;
  auto rng_i = testutil::rng(44);
  auto rng_r = testutil::rng(45);
  harness::SideResult res;
  std::jthread responder([&] {
    res = harness::capture([&] { return run_responder(*r, rng_r, cfg); });
  });
  const auto ini = harness::capture([&] { return run_initiator(*i, pp, rng_i); });
  responder.join();
  CHECK(ini.outcome == harness::Outcome::kProtocolError);
  CHECK(res.outcome == harness::Outcome::kProtocolError);
}

TEST_CASE("TCP loopback handshake and concurrent sessions") {
  TcpListener listener("127.0.0.1", 0);
  const auto pp = params64(46);
  std::vector<harness::SideResult> served(2);
  std::jthread server([&] {
    std::vector<std::jthread> sessions;
    for (int k = 0; k < 2; ++k) {
      auto conn = listener.accept();
      sessions.emplace_back([&served, k, c = std::move(conn)]() mutable {
        auto rng = testutil::rng(500 + k);
        served[k] = harness::capture([&] { return run_responder(*c, rng); });
      });
    }
  });
  std::vector<harness::SideResult> clients(2);
  {
    std::vector<std::jthread> threads;
    for (int k = 0; k < 2; ++k) {
      threads.emplace_back([&, k] {
        auto rng = testutil::rng(600 + k);
        auto conn = tcp_connect("127.0.0.1", listener.port(), 2s);
        clients[k] = harness::capture([&] { return run_initiator(*conn, pp, rng); });
      });
    }
  }
  server.join();
  for (int k = 0; k < 2; ++k) {
    REQUIRE(clients[k].outcome == harness::Outcome::kKey);
    REQUIRE(served[k].outcome == harness::Outcome::kKey);
  }
  // Pair sessions by key: each client key matches exactly one server key.
  for (const auto& c : clients) {
    int matches = 0;
    for (const auto& s : served) {
      matches += c.key->session_key == s.key->session_key ? 1 : 0;
    }
    CHECK(matches == 1);
  }
  CHECK(clients[0].key->session_key != clients[1].key->session_key);
}

TEST_CASE("connect to a closed port") {
  std::uint16_t port = 0;
  {
    TcpListener l("127.0.0.1", 0);
    port = l.port();
  }
  CHECK_THROWS_AS(tcp_connect("127.0.0.1", port, 1s), ConnectionError);
}
