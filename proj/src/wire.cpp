#include "rmpf/wire.hpp"

#include <openssl/crypto.h>

#include <array>
#include <string>

#include "rmpf/error.hpp"

namespace rmpf::wire {

namespace {

constexpr std::size_t kReadChunk = 4096;

bool known_type(std::uint8_t t) {
  switch (static_cast<MsgType>(t)) {
    case MsgType::kParams:
    case MsgType::kTokenI:
    case MsgType::kTokenR:
    case MsgType::kConfirmI:
    case MsgType::kConfirmR:
    case MsgType::kError:
      return true;
  }
  return false;
}

Bytes digest_bytes(const Digest& d) { return Bytes(d.begin(), d.end()); }

bool tag_matches(std::span<const std::uint8_t> got, const Digest& want) {
  return got.size() == want.size() &&
         CRYPTO_memcmp(got.data(), want.data(), want.size()) == 0;
}

Token parse_token(Session& session, const PublicParams& params,
                  const Frame& frame) {
  try {
    ByteReader in(frame.payload);
    const RawMatrix raw = decode_matrix(in);
    if (!in.done()) throw ParseError("trailing bytes after token");
    return Token::from_raw(params, raw);
  } catch (const Error& e) {
    session.fail(ErrorCode::kMalformedToken, e.what());
    throw ProtocolError(std::string("malformed ") + to_string(frame.type) +
                        ": " + e.what());
  }
}

}  // namespace

const char* to_string(MsgType type) {
  switch (type) {
    case MsgType::kParams: return "PARAMS";
    case MsgType::kTokenI: return "TOKEN_I";
    case MsgType::kTokenR: return "TOKEN_R";
    case MsgType::kConfirmI: return "CONFIRM_I";
    case MsgType::kConfirmR: return "CONFIRM_R";
    case MsgType::kError: return "ERROR";
  }
  return "UNKNOWN";
}

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::kStart: return "start";
    case Phase::kParamsExchanged: return "params-exchanged";
    case Phase::kTokenSent: return "token-sent";
    case Phase::kConfirmed: return "confirmed";
    case Phase::kFailed: return "failed";
  }
  return "unknown";
}

Bytes encode_frame(const Frame& frame) {
  if (frame.payload.size() > kMaxPayload) {
    throw ProtocolError("frame payload of " +
                        std::to_string(frame.payload.size()) +
                        " bytes exceeds the 1 MiB cap");
  }
  Bytes out;
  out.reserve(kHeaderSize + frame.payload.size());
  ByteWriter w(out);
  w.u32(static_cast<std::uint32_t>(frame.payload.size()));
  w.u8(static_cast<std::uint8_t>(frame.type));
  w.raw(frame.payload);
  return out;
}

std::variant<Decoded, NeedMore> decode_frame(
    std::span<const std::uint8_t> data) {
  if (data.size() < kHeaderSize) return NeedMore{kHeaderSize - data.size()};
  ByteReader in(data);
  const std::uint32_t length = in.u32();
  const std::uint8_t type = in.u8();
  if (length > kMaxPayload) {
    throw ProtocolError("declared frame length " + std::to_string(length) +
                        " exceeds the 1 MiB cap");
  }
  if (!known_type(type)) {
    throw ProtocolError("unknown message type " + std::to_string(type));
  }
  if (in.remaining() < length) return NeedMore{length - in.remaining()};
  auto payload = in.raw(length);
  return Decoded{Frame{static_cast<MsgType>(type),
                       Bytes(payload.begin(), payload.end())},
                 kHeaderSize + length};
}

Digest confirm_tag(Role sender, const SessionKey& key) {
  Sha256 h;
  h.update(sender == Role::kInitiator ? "confirm-I" : "confirm-R");
  h.update(key);
  return h.digest();
}

Session::Session(Role role, ByteStream& stream, SessionConfig config)
    : role_(role), stream_(stream), config_(std::move(config)) {}

void Session::advance(Phase next) {
  if (phase_ == Phase::kFailed || next <= phase_) {
    phase_ = Phase::kFailed;
    throw ProtocolError(std::string("illegal phase transition to ") +
                        to_string(next));
  }
  phase_ = next;
}

void Session::send(const Frame& frame) {
  if (phase_ == Phase::kFailed) throw ProtocolError("session has failed");
  const Bytes bytes = encode_frame(frame);
  transcript_.update(bytes);
  try {
    stream_.write(bytes);
  } catch (...) {
    phase_ = Phase::kFailed;
    throw;
  }
}

Frame Session::read_frame() {
  std::array<std::uint8_t, kReadChunk> chunk;
  for (;;) {
    auto result = decode_frame(buffer_);
    if (auto* decoded = std::get_if<Decoded>(&result)) {
      buffer_.erase(buffer_.begin(),
                    buffer_.begin() + static_cast<long>(decoded->consumed));
      return std::move(decoded->frame);
    }
    const std::size_t n = stream_.read_some(chunk, config_.timeout);
    if (n == 0) throw ConnectionError("peer closed the connection");
    buffer_.insert(buffer_.end(), chunk.begin(), chunk.begin() + n);
  }
}

Frame Session::receive(MsgType expected) {
  if (phase_ == Phase::kFailed) throw ProtocolError("session has failed");
  Frame frame;
  try {
    frame = read_frame();
  } catch (const ProtocolError& e) {
    fail(ErrorCode::kUnexpectedMessage, e.what());
    throw;
  } catch (...) {
    phase_ = Phase::kFailed;
    throw;
  }
  if (frame.type == MsgType::kError) {
    phase_ = Phase::kFailed;
    const auto code = frame.payload.empty()
                          ? ErrorCode{0}
                          : static_cast<ErrorCode>(frame.payload[0]);
    const std::string detail =
        frame.payload.size() > 1
            ? std::string(frame.payload.begin() + 1, frame.payload.end())
            : std::string("no detail");
    if (code == ErrorCode::kConfirmFailed) {
      throw KeyConfirmationFailed("peer reported key confirmation failure: " +
                                  detail);
    }
    throw ProtocolError("peer reported error: " + detail);
  }
  if (frame.type != expected) {
    const std::string msg = std::string("expected ") + to_string(expected) +
                            ", got " + to_string(frame.type);
    fail(ErrorCode::kUnexpectedMessage, msg);
    throw ProtocolError(msg);
  }
  transcript_.update(encode_frame(frame));
  return frame;
}

void Session::fail(ErrorCode code, std::string_view message) {
  if (phase_ != Phase::kFailed) {
    Bytes payload;
    ByteWriter w(payload);
    w.u8(static_cast<std::uint8_t>(code));
    w.raw(message.substr(0, 512));
    try {
      stream_.write(encode_frame(Frame{MsgType::kError, std::move(payload)}));
    } catch (const Error&) {
      // peer already gone
    }
  }
  phase_ = Phase::kFailed;
}

SharedKey run_initiator(ByteStream& stream, const PublicParams& params,
                        Rng& rng, SessionConfig config) {
  Session session(Role::kInitiator, stream, std::move(config));
  session.send(Frame{MsgType::kParams, encode_params(params)});
  session.advance(Phase::kParamsExchanged);

  const PrivateKey priv = gen_private(params, rng);
  const Token own = make_token(params, priv);
  session.send(Frame{MsgType::kTokenI, encode_matrix(own.matrix)});
  session.advance(Phase::kTokenSent);

  const Token peer =
      parse_token(session, params, session.receive(MsgType::kTokenR));
  SharedKey key = derive_key(params, priv, peer, session.transcript_hash());

  session.send(Frame{MsgType::kConfirmI,
                     digest_bytes(confirm_tag(Role::kInitiator, key.session_key))});
  const Frame confirm = session.receive(MsgType::kConfirmR);
  if (!tag_matches(confirm.payload,
                   confirm_tag(Role::kResponder, key.session_key))) {
    session.fail(ErrorCode::kConfirmFailed, "CONFIRM_R does not verify");
    throw KeyConfirmationFailed("responder confirmation tag mismatch");
  }
  session.advance(Phase::kConfirmed);
  return key;
}

SharedKey run_responder(ByteStream& stream, Rng& rng, SessionConfig config) {
  const std::optional<PublicParams> pinned = config.pinned_params;
  Session session(Role::kResponder, stream, std::move(config));

  const Frame params_frame = session.receive(MsgType::kParams);
  std::optional<PublicParams> decoded;
  try {
    decoded = decode_params(params_frame.payload);
  } catch (const Error& e) {
    session.fail(ErrorCode::kInvalidParams, e.what());
    throw ProtocolError(std::string("invalid PARAMS: ") + e.what());
  }
  const PublicParams& params = *decoded;
  if (pinned && !(params == *pinned)) {
    session.fail(ErrorCode::kParamsRejected,
                 "parameters differ from the pinned set");
    throw ProtocolError("PARAMS differ from the pinned parameter set");
  }
  session.advance(Phase::kParamsExchanged);

  const Token peer =
      parse_token(session, params, session.receive(MsgType::kTokenI));
  const PrivateKey priv = gen_private(params, rng);
  const Token own = make_token(params, priv);
  session.send(Frame{MsgType::kTokenR, encode_matrix(own.matrix)});
  session.advance(Phase::kTokenSent);
  SharedKey key = derive_key(params, priv, peer, session.transcript_hash());

  const Frame confirm = session.receive(MsgType::kConfirmI);
  if (!tag_matches(confirm.payload,
                   confirm_tag(Role::kInitiator, key.session_key))) {
    session.fail(ErrorCode::kConfirmFailed, "CONFIRM_I does not verify");
    throw KeyConfirmationFailed("initiator confirmation tag mismatch");
  }
  session.send(Frame{MsgType::kConfirmR,
                     digest_bytes(confirm_tag(Role::kResponder, key.session_key))});
  session.advance(Phase::kConfirmed);
  return key;
}

}  // namespace rmpf::wire
