// ca.hpp
// Certification Authority side of the session-key protocol: the secret
// registry, the append-only audit log, session establishment, and the
// transport-independent broker state machine that both the in-process
// loopback and the socket service drive.
//
// Session flow (Steps 1..6): the initiator REQUESTs a key with a peer,
// the peer AGREEs, the CA picks an alternative partition p + q = a + b,
// appends the audit record, and only then releases p masked under each
// party's h(secret). Parties recover p locally and seed their keystreams
// from it.

#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gbx/primes.hpp"
#include "gbx/protocol.hpp"
#include "gbx/wire.hpp"

namespace gbx {

// CA-side map party_id -> secret odd prime. Read-only at serve time.
class Registry {
public:
    Registry() = default;

    // Loads newline-delimited `id,prime` records; '#' lines are comments.
    // Throws std::runtime_error on unreadable files or invalid records.
    static Registry load(const std::string& path);

    // Throws std::invalid_argument on duplicate ids, ids longer than 64
    // bytes, or values that are not odd primes > 2.
    void add(std::string id, uint64_t secret_prime);

    std::optional<uint64_t> find(const std::string& id) const;
    size_t size() const { return secrets_.size(); }
    uint64_t max_secret() const;

private:
    std::map<std::string, uint64_t> secrets_;
};

// One audit entry per established session; p + q = n reproduces a + b.
struct SessionRecord {
    std::string session_id;   // 32 hex chars
    std::string id_a;
    std::string id_b;
    uint64_t n = 0;
    uint64_t p = 0;           // session key
    uint64_t q = 0;           // audit key
    std::string created_at;   // ISO 8601 UTC
};

// Append-only JSON-lines sink with serialized writes.
class AuditLog {
public:
    explicit AuditLog(std::ostream& sink) : sink_(sink) {}

    void append(const SessionRecord& record);
    uint64_t entries() const { return entries_; }

private:
    std::ostream& sink_;
    std::mutex mu_;
    uint64_t entries_ = 0;
};

std::string to_json_line(const SessionRecord& record);

struct EstablishResult {
    SessionRecord record;
    MaskedKey for_a;
    MaskedKey for_b;
};

class CertAuthority {
public:
    // The sieve must cover a + b for every registered pair.
    CertAuthority(Registry registry, const PrimeSieve& sieve, AuditLog& audit,
                  uint64_t seed);

    // Runs Step 3: chooses the alternative partition, appends the audit
    // record, then builds the masked shares. Throws AuthenticationError
    // for unknown ids and NoAlternativePartition when the session must be
    // refused. Nonces, when present, are mixed into the respective
    // party's mask as h(secret || nonce). The session id is the one the
    // initiator put on the wire; when absent the CA draws a fresh one.
    EstablishResult establish(const std::string& id_a, const std::string& id_b,
                              std::optional<Nonce> nonce_a = std::nullopt,
                              std::optional<Nonce> nonce_b = std::nullopt,
                              std::optional<SessionId> sid = std::nullopt);

    const Registry& registry() const { return registry_; }

private:
    Registry registry_;
    const PrimeSieve& sieve_;
    AuditLog& audit_;
    std::mt19937_64 rng_;
    std::mutex mu_;
};

// Fresh 16-byte session id from a caller-owned engine.
SessionId make_session_id(std::mt19937_64& rng);

// Party side of Steps 4/5: unmask with the own secret and validate the
// result (odd prime <= max_key). Throws IntegrityFailure otherwise.
uint64_t party_recover(const MaskedKey& mk, uint64_t own_secret,
                       uint64_t max_key = kMaxSessionKey);
uint64_t party_recover(const MaskedKey& mk, uint64_t own_secret,
                       std::span<const uint8_t> nonce,
                       uint64_t max_key = kMaxSessionKey);

// Transport-independent CA state machine. Connections are opaque ints
// supplied by the transport; on_message returns the frames to deliver.
//
// A session becomes established when the peer of a pending REQUEST either
// sends AGREE (matching by ids) or sends its own REQUEST for the reversed
// pair, which the broker takes as agreement; single-command clients
// therefore need no extra round trip.
class SessionBroker {
public:
    explicit SessionBroker(CertAuthority& ca) : ca_(ca) {}

    std::vector<std::pair<int, ProtocolMessage>> on_message(
        int conn, const ProtocolMessage& msg);
    void on_disconnect(int conn);

private:
    struct Pending {
        SessionId sid{};
        std::string initiator;
        std::string peer;
        int conn = -1;
        std::optional<Nonce> nonce;
    };

    static std::string pair_key(const std::string& x, const std::string& y) {
        return x < y ? x + "\x1f" + y : y + "\x1f" + x;
    }

    CertAuthority& ca_;
    std::map<std::string, Pending> pending_;
    std::mutex mu_;
};

} // namespace gbx
