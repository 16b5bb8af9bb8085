// ca.cpp

#include "gbx/ca.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "gbx/errors.hpp"
#include "gbx/serial.hpp"
#include "gbx/sha256.hpp"

namespace gbx {

namespace {

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

Registry Registry::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("registry: cannot open '" + path + "'");
    Registry reg;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const size_t comma = line.find(',');
        if (comma == std::string::npos || comma == 0)
            throw std::runtime_error("registry: bad record at line " +
                                     std::to_string(lineno) +
                                     " (expected id,prime)");
        try {
            reg.add(line.substr(0, comma),
                    std::stoull(line.substr(comma + 1)));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("registry: line " + std::to_string(lineno) +
                                     ": " + e.what());
        }
    }
    return reg;
}

void Registry::add(std::string id, uint64_t secret_prime) {
    if (id.empty() || id.size() > 64)
        throw std::invalid_argument("party id must be 1..64 bytes");
    if (secret_prime < 3 || secret_prime % 2 == 0 ||
        !serial::is_prime(secret_prime))
        throw std::invalid_argument("secret for '" + id +
                                    "' must be an odd prime > 2, got " +
                                    std::to_string(secret_prime));
    if (!secrets_.emplace(std::move(id), secret_prime).second)
        throw std::invalid_argument("duplicate party id");
}

std::optional<uint64_t> Registry::find(const std::string& id) const {
    const auto it = secrets_.find(id);
    if (it == secrets_.end()) return std::nullopt;
    return it->second;
}

uint64_t Registry::max_secret() const {
    uint64_t mx = 0;
    for (const auto& [id, prime] : secrets_) mx = std::max(mx, prime);
    return mx;
}

std::string to_json_line(const SessionRecord& record) {
    nlohmann::json j;
    j["session_id"] = record.session_id;
    j["id_a"] = record.id_a;
    j["id_b"] = record.id_b;
    j["n"] = record.n;
    j["p"] = record.p;
    j["q"] = record.q;
    j["created_at"] = record.created_at;
    return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

void AuditLog::append(const SessionRecord& record) {
    std::lock_guard lock(mu_);
    sink_ << to_json_line(record) << '\n';
    sink_.flush();
    if (!sink_)
        throw std::runtime_error("audit log: write failed");
    ++entries_;
}

CertAuthority::CertAuthority(Registry registry, const PrimeSieve& sieve,
                             AuditLog& audit, uint64_t seed)
    : registry_(std::move(registry)), sieve_(sieve), audit_(audit), rng_(seed) {}

SessionId make_session_id(std::mt19937_64& rng) {
    SessionId sid;
    for (size_t i = 0; i < sid.size(); i += 8) {
        const uint64_t r = rng();
        for (size_t j = 0; j < 8; ++j)
            sid[i + j] = static_cast<uint8_t>(r >> (8 * j));
    }
    return sid;
}

EstablishResult CertAuthority::establish(const std::string& id_a,
                                         const std::string& id_b,
                                         std::optional<Nonce> nonce_a,
                                         std::optional<Nonce> nonce_b,
                                         std::optional<SessionId> sid) {
    const auto a = registry_.find(id_a);
    if (!a) throw AuthenticationError("unknown party id '" + id_a + "'");
    const auto b = registry_.find(id_b);
    if (!b) throw AuthenticationError("unknown party id '" + id_b + "'");

    EstablishResult result;
    {
        std::lock_guard lock(mu_);
        const auto [p, q] = choose_session_partition(sieve_, *a, *b, rng_);
        if (!sid) sid = make_session_id(rng_);
        result.record = SessionRecord{hex(*sid), id_a, id_b, *a + *b,
                                      p,         q,    iso_now()};
    }

    // The record must be on disk before any share leaves the CA.
    audit_.append(result.record);

    const auto mask_for = [&](uint64_t secret, const std::optional<Nonce>& nonce) {
        const auto material =
            nonce ? hash_mask(secret, *nonce, kKeyWidth)
                  : hash_mask(secret, kKeyWidth);
        return mask(result.record.p, material);
    };
    result.for_a = mask_for(*a, nonce_a);
    result.for_b = mask_for(*b, nonce_b);
    return result;
}

uint64_t party_recover(const MaskedKey& mk, uint64_t own_secret,
                       uint64_t max_key) {
    return party_recover(mk, own_secret, std::span<const uint8_t>{}, max_key);
}

uint64_t party_recover(const MaskedKey& mk, uint64_t own_secret,
                       std::span<const uint8_t> nonce, uint64_t max_key) {
    const auto material = nonce.empty()
                              ? hash_mask(own_secret, mk.width())
                              : hash_mask(own_secret, nonce, mk.width());
    const uint64_t value = unmask(mk, material);
    // Parties hold no sieve; exact trial division is the check here.
    if (value < 3 || value > max_key || value % 2 == 0 ||
        !serial::is_prime(value))
        throw IntegrityFailure("recovered value " + std::to_string(value) +
                               " is not a plausible session key (wrong secret "
                               "or tampered share)");
    return value;
}

std::vector<std::pair<int, ProtocolMessage>> SessionBroker::on_message(
    int conn, const ProtocolMessage& msg) {
    std::vector<std::pair<int, ProtocolMessage>> out;

    if (msg.type != MsgType::request && msg.type != MsgType::agree) {
        out.emplace_back(conn, make_error(msg.session_id, kErrInternal,
                                          "CA accepts only REQUEST and AGREE"));
        return out;
    }
    const auto& pair = std::get<PairPayload>(msg.payload);
    const std::string key = pair_key(pair.sender, pair.peer);

    std::lock_guard lock(mu_);
    auto it = pending_.find(key);

    if (msg.type == MsgType::request) {
        if (it == pending_.end() || it->second.initiator != pair.peer) {
            // Step 1: park the initiator until the peer shows up. A
            // re-REQUEST from the same initiator replaces the stale entry.
            pending_[key] =
                Pending{msg.session_id, pair.sender, pair.peer, conn, pair.nonce};
            return out;
        }
        // REQUEST for the reversed pair: the peer is agreeing.
    } else {
        if (it == pending_.end() || it->second.initiator != pair.peer) {
            out.emplace_back(conn,
                             make_error(msg.session_id, kErrNoPendingSession,
                                        "no pending session for this pair"));
            return out;
        }
    }

    // Step 2 complete; run Step 3 and fan the shares out.
    const Pending initiator = it->second;
    pending_.erase(it);
    try {
        auto result = ca_.establish(initiator.initiator, pair.sender,
                                    initiator.nonce, pair.nonce, initiator.sid);
        out.emplace_back(initiator.conn,
                         make_keyshare(initiator.sid, std::move(result.for_a),
                                       initiator.nonce));
        out.emplace_back(conn, make_keyshare(initiator.sid,
                                             std::move(result.for_b),
                                             pair.nonce));
    } catch (const AuthenticationError& e) {
        out.emplace_back(initiator.conn, make_error(initiator.sid,
                                                    kErrUnknownParty, e.what()));
        out.emplace_back(conn,
                         make_error(initiator.sid, kErrUnknownParty, e.what()));
    } catch (const NoAlternativePartition& e) {
        out.emplace_back(initiator.conn,
                         make_error(initiator.sid,
                                    kErrNoAlternativePartition, e.what()));
        out.emplace_back(conn, make_error(initiator.sid,
                                          kErrNoAlternativePartition, e.what()));
    }
    return out;
}

void SessionBroker::on_disconnect(int conn) {
    std::lock_guard lock(mu_);
    for (auto it = pending_.begin(); it != pending_.end();) {
        if (it->second.conn == conn)
            it = pending_.erase(it);
        else
            ++it;
    }
}

} // namespace gbx
