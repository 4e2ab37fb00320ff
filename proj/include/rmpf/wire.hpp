#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>

#include "rmpf/bytes.hpp"
#include "rmpf/kap.hpp"
#include "rmpf/stream.hpp"

namespace rmpf::wire {

enum class MsgType : std::uint8_t {
  kParams = 0x01,
  kTokenI = 0x02,
  kTokenR = 0x03,
  kConfirmI = 0x04,
  kConfirmR = 0x05,
  kError = 0x7F,
};

const char* to_string(MsgType type);

inline constexpr std::size_t kHeaderSize = 5;
inline constexpr std::size_t kMaxPayload = std::size_t{1} << 20;

/// u32 big-endian payload length, one type byte, payload.
struct Frame {
  MsgType type;
  Bytes payload;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Throws ProtocolError if the payload exceeds kMaxPayload.
Bytes encode_frame(const Frame& frame);

struct NeedMore {
  std::size_t bytes;  // minimum additional bytes before a retry can succeed
};

struct Decoded {
  Frame frame;
  std::size_t consumed;
};

/// Decodes one frame from the front of `data`. Throws ProtocolError on an
/// unknown type or a declared length above the cap; never reads past
/// `data.size()` and never allocates more than the declared, capped length.
std::variant<Decoded, NeedMore> decode_frame(std::span<const std::uint8_t> data);

/// Codes carried in the first payload byte of an ERROR frame.
enum class ErrorCode : std::uint8_t {
  kInvalidParams = 1,
  kMalformedToken = 2,
  kConfirmFailed = 3,
  kUnexpectedMessage = 4,
  kParamsRejected = 5,
};

enum class Role { kInitiator, kResponder };

enum class Phase { kStart, kParamsExchanged, kTokenSent, kConfirmed, kFailed };

const char* to_string(Phase phase);

struct SessionConfig {
  std::chrono::milliseconds timeout{10'000};
  /// Responder only: reject any PARAMS that differ from these.
  std::optional<PublicParams> pinned_params;
};

/// Per-connection protocol state: phase, running transcript hash and a
/// read buffer. Frames must arrive in the order the role expects; anything
/// else moves the session to kFailed for good.
class Session {
 public:
  Session(Role role, ByteStream& stream, SessionConfig config = {});

  Role role() const noexcept { return role_; }
  Phase phase() const noexcept { return phase_; }
  Digest transcript_hash() const { return transcript_.digest(); }

  void send(const Frame& frame);

  /// Next frame, which must have type `expected`. A peer ERROR frame is
  /// surfaced as ProtocolError (KeyConfirmationFailed for kConfirmFailed).
  Frame receive(MsgType expected);

  /// Best-effort ERROR frame, then phase = kFailed.
  void fail(ErrorCode code, std::string_view message);

  void advance(Phase next);

 private:
  Frame read_frame();

  Role role_;
  ByteStream& stream_;
  SessionConfig config_;
  Phase phase_ = Phase::kStart;
  Sha256 transcript_;
  Bytes buffer_;
};

/// Tags exchanged after key derivation: SHA-256(label || session key) with
/// label "confirm-I" or "confirm-R".
Digest confirm_tag(Role sender, const SessionKey& key);

/// Initiator side: PARAMS, TOKEN_I, then TOKEN_R and the confirm exchange.
/// Returns the key only if the responder's confirm tag verifies.
SharedKey run_initiator(ByteStream& stream, const PublicParams& params,
                        Rng& rng, SessionConfig config = {});

/// Responder side: validates PARAMS, answers TOKEN_R, verifies CONFIRM_I
/// and replies CONFIRM_R.
SharedKey run_responder(ByteStream& stream, Rng& rng,
                        SessionConfig config = {});

}  // namespace rmpf::wire
