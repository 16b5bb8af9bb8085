// wire.cpp

#include "gbx/wire.hpp"

#include "gbx/errors.hpp"

namespace gbx {

namespace {

constexpr size_t kHeaderSize = 4;                 // length prefix
constexpr size_t kFixedSize = 1 + 16;             // type + session id
constexpr size_t kMaxIdLen = 64;

void put_u8(std::vector<uint8_t>& out, uint8_t v) { out.push_back(v); }

void put_bytes(std::vector<uint8_t>& out, std::span<const uint8_t> b) {
    out.insert(out.end(), b.begin(), b.end());
}

void put_string(std::vector<uint8_t>& out, const std::string& s) {
    out.insert(out.end(), s.begin(), s.end());
}

// Bounds-checked sequential reader over the payload bytes.
struct Reader {
    std::span<const uint8_t> data;
    size_t pos = 0;

    size_t remaining() const { return data.size() - pos; }

    uint8_t u8() {
        if (remaining() < 1) throw CodecError("frame truncated inside payload");
        return data[pos++];
    }
    uint16_t u16() {
        if (remaining() < 2) throw CodecError("frame truncated inside payload");
        const uint16_t v = static_cast<uint16_t>((data[pos] << 8) | data[pos + 1]);
        pos += 2;
        return v;
    }
    std::span<const uint8_t> take(size_t n) {
        if (remaining() < n) throw CodecError("frame truncated inside payload");
        auto s = data.subspan(pos, n);
        pos += n;
        return s;
    }
};

std::string read_id(Reader& r) {
    const uint8_t len = r.u8();
    if (len == 0 || len > kMaxIdLen)
        throw CodecError("party id length must be in [1, 64], got " +
                         std::to_string(len));
    const auto bytes = r.take(len);
    return std::string(bytes.begin(), bytes.end());
}

std::optional<Nonce> read_optional_nonce(Reader& r) {
    if (r.remaining() == 0) return std::nullopt;
    if (r.remaining() != 16)
        throw CodecError("trailing bytes are not a 16-byte nonce");
    Nonce n;
    const auto bytes = r.take(16);
    std::copy(bytes.begin(), bytes.end(), n.begin());
    return n;
}

void encode_payload(const ProtocolMessage& msg, std::vector<uint8_t>& out) {
    switch (msg.type) {
    case MsgType::request:
    case MsgType::agree: {
        const auto& p = std::get<PairPayload>(msg.payload);
        if (p.sender.empty() || p.sender.size() > kMaxIdLen ||
            p.peer.empty() || p.peer.size() > kMaxIdLen)
            throw CodecError("party ids must be 1..64 bytes");
        put_u8(out, static_cast<uint8_t>(p.sender.size()));
        put_string(out, p.sender);
        put_u8(out, static_cast<uint8_t>(p.peer.size()));
        put_string(out, p.peer);
        if (p.nonce) put_bytes(out, *p.nonce);
        break;
    }
    case MsgType::keyshare: {
        const auto& p = std::get<KeysharePayload>(msg.payload);
        if (p.key.width() == 0 || p.key.width() > 255)
            throw CodecError("masked key width must be 1..255 bytes");
        put_u8(out, static_cast<uint8_t>(p.key.width()));
        put_bytes(out, p.key.bytes);
        if (p.nonce_echo) put_bytes(out, *p.nonce_echo);
        break;
    }
    case MsgType::error: {
        const auto& p = std::get<ErrorPayload>(msg.payload);
        out.push_back(static_cast<uint8_t>(p.code >> 8));
        out.push_back(static_cast<uint8_t>(p.code & 0xff));
        put_string(out, p.message);
        break;
    }
    }
}

} // namespace

ProtocolMessage make_request(const SessionId& sid, std::string sender,
                             std::string peer, std::optional<Nonce> nonce) {
    return {MsgType::request, sid,
            PairPayload{std::move(sender), std::move(peer), nonce}};
}

ProtocolMessage make_agree(const SessionId& sid, std::string sender,
                           std::string peer, std::optional<Nonce> nonce) {
    return {MsgType::agree, sid,
            PairPayload{std::move(sender), std::move(peer), nonce}};
}

ProtocolMessage make_keyshare(const SessionId& sid, MaskedKey key,
                              std::optional<Nonce> nonce_echo) {
    return {MsgType::keyshare, sid, KeysharePayload{std::move(key), nonce_echo}};
}

ProtocolMessage make_error(const SessionId& sid, uint16_t code,
                           std::string message) {
    return {MsgType::error, sid, ErrorPayload{code, std::move(message)}};
}

std::vector<uint8_t> encode(const ProtocolMessage& msg) {
    std::vector<uint8_t> body;
    body.reserve(64);
    body.push_back(static_cast<uint8_t>(msg.type));
    put_bytes(body, msg.session_id);
    encode_payload(msg, body);

    std::vector<uint8_t> frame;
    frame.reserve(kHeaderSize + body.size());
    const uint32_t total = static_cast<uint32_t>(body.size());
    frame.push_back(static_cast<uint8_t>(total >> 24));
    frame.push_back(static_cast<uint8_t>(total >> 16));
    frame.push_back(static_cast<uint8_t>(total >> 8));
    frame.push_back(static_cast<uint8_t>(total));
    put_bytes(frame, body);
    return frame;
}

ProtocolMessage decode(std::span<const uint8_t> frame) {
    if (frame.size() < kHeaderSize + kFixedSize)
        throw CodecError("frame shorter than minimum " +
                         std::to_string(kHeaderSize + kFixedSize) + " bytes");
    const uint32_t total = (uint32_t(frame[0]) << 24) | (uint32_t(frame[1]) << 16) |
                           (uint32_t(frame[2]) << 8) | uint32_t(frame[3]);
    if (total < kFixedSize)
        throw CodecError("length prefix " + std::to_string(total) +
                         " below fixed header size");
    if (frame.size() != kHeaderSize + total)
        throw CodecError("length prefix " + std::to_string(total) +
                         " disagrees with frame size " +
                         std::to_string(frame.size()));

    ProtocolMessage msg;
    const uint8_t type = frame[4];
    if (type < 0x01 || type > 0x04)
        throw CodecError("unknown message type " + std::to_string(type));
    msg.type = static_cast<MsgType>(type);
    std::copy(frame.begin() + 5, frame.begin() + 21, msg.session_id.begin());

    Reader r{frame.subspan(kHeaderSize + kFixedSize), 0};
    switch (msg.type) {
    case MsgType::request:
    case MsgType::agree: {
        PairPayload p;
        p.sender = read_id(r);
        p.peer = read_id(r);
        p.nonce = read_optional_nonce(r);
        msg.payload = std::move(p);
        break;
    }
    case MsgType::keyshare: {
        KeysharePayload p;
        const uint8_t width = r.u8();
        if (width == 0) throw CodecError("masked key width must be >= 1");
        const auto bytes = r.take(width);
        p.key.bytes.assign(bytes.begin(), bytes.end());
        p.nonce_echo = read_optional_nonce(r);
        msg.payload = std::move(p);
        break;
    }
    case MsgType::error: {
        ErrorPayload p;
        p.code = r.u16();
        const auto rest = r.take(r.remaining());
        p.message.assign(rest.begin(), rest.end());
        msg.payload = std::move(p);
        break;
    }
    }
    if (r.remaining() != 0)
        throw CodecError("payload has " + std::to_string(r.remaining()) +
                         " unexpected trailing bytes");
    return msg;
}

} // namespace gbx
