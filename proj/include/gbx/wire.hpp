// wire.hpp
// Length-prefixed binary framing for the session-key protocol.
//
// Frame layout (bit-exact):
//   u32 big-endian total_length | u8 type | 16-byte session_id | payload
// total_length counts everything after the prefix (type + session_id +
// payload), so a well-formed frame is exactly 4 + total_length bytes.
//
// Payloads:
//   REQUEST / AGREE: u8 id_len, sender id, u8 id_len, peer id
//                    [, 16-byte nonce]
//   KEYSHARE:        u8 width, masked bytes [, 16-byte nonce echo]
//   ERROR:           u16 big-endian code, utf-8 message
//
// decode(encode(m)) == m for every message; decode rejects frames whose
// length prefix disagrees with the bytes actually present.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gbx/protocol.hpp"

namespace gbx {

enum class MsgType : uint8_t {
    request = 0x01,
    agree = 0x02,
    keyshare = 0x03,
    error = 0x04,
};

using SessionId = std::array<uint8_t, 16>;
using Nonce = std::array<uint8_t, 16>;

// Error payload codes.
inline constexpr uint16_t kErrUnknownParty = 1;
inline constexpr uint16_t kErrNoAlternativePartition = 2;
inline constexpr uint16_t kErrNoPendingSession = 3;
inline constexpr uint16_t kErrInternal = 4;

// REQUEST and AGREE share this shape; `sender` is the party emitting the
// frame, `peer` the one it wants a key with.
struct PairPayload {
    std::string sender;
    std::string peer;
    std::optional<Nonce> nonce;

    bool operator==(const PairPayload&) const = default;
};

struct KeysharePayload {
    MaskedKey key;
    std::optional<Nonce> nonce_echo;

    bool operator==(const KeysharePayload&) const = default;
};

struct ErrorPayload {
    uint16_t code = 0;
    std::string message;

    bool operator==(const ErrorPayload&) const = default;
};

struct ProtocolMessage {
    MsgType type = MsgType::request;
    SessionId session_id{};
    std::variant<PairPayload, KeysharePayload, ErrorPayload> payload;

    bool operator==(const ProtocolMessage&) const = default;
};

// Convenience constructors.
ProtocolMessage make_request(const SessionId& sid, std::string sender,
                             std::string peer,
                             std::optional<Nonce> nonce = std::nullopt);
ProtocolMessage make_agree(const SessionId& sid, std::string sender,
                           std::string peer,
                           std::optional<Nonce> nonce = std::nullopt);
ProtocolMessage make_keyshare(const SessionId& sid, MaskedKey key,
                              std::optional<Nonce> nonce_echo = std::nullopt);
ProtocolMessage make_error(const SessionId& sid, uint16_t code,
                           std::string message);

std::vector<uint8_t> encode(const ProtocolMessage& msg);

// Throws CodecError on any malformed frame.
ProtocolMessage decode(std::span<const uint8_t> frame);

} // namespace gbx
