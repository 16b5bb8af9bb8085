// net.cpp

#include "gbx/net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "gbx/errors.hpp"

namespace gbx::net {

namespace {

constexpr uint32_t kMaxFrame = 1 << 20;

void write_all(int fd, const uint8_t* data, size_t len) {
    size_t off = 0;
    while (off < len) {
        const ssize_t n = ::send(fd, data + off, len - off, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw ProtocolError(std::string("send failed: ") + std::strerror(errno));
        }
        off += static_cast<size_t>(n);
    }
}

void read_all(int fd, uint8_t* data, size_t len) {
    size_t off = 0;
    while (off < len) {
        const ssize_t n = ::recv(fd, data + off, len - off, 0);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw ProtocolError(std::string("recv failed: ") + std::strerror(errno));
        }
        if (n == 0) throw ProtocolError("connection closed mid-frame");
        off += static_cast<size_t>(n);
    }
}

int connect_to(const std::string& host, uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    const std::string port_str = std::to_string(port);
    if (::getaddrinfo(host.c_str(), port_str.c_str(), &hints, &res) != 0)
        throw ProtocolError("cannot resolve '" + host + "'");
    int fd = -1;
    for (addrinfo* ai = res; ai; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(res);
    if (fd < 0)
        throw ProtocolError("cannot connect to " + host + ":" + port_str);
    return fd;
}

} // namespace

void write_frame(int fd, const ProtocolMessage& msg) {
    const auto frame = encode(msg);
    write_all(fd, frame.data(), frame.size());
}

ProtocolMessage read_frame(int fd) {
    uint8_t header[4];
    read_all(fd, header, 4);
    const uint32_t total = (uint32_t(header[0]) << 24) | (uint32_t(header[1]) << 16) |
                           (uint32_t(header[2]) << 8) | uint32_t(header[3]);
    if (total > kMaxFrame)
        throw ProtocolError("frame length " + std::to_string(total) +
                            " exceeds 1 MiB cap");
    std::vector<uint8_t> frame(4 + total);
    std::memcpy(frame.data(), header, 4);
    read_all(fd, frame.data() + 4, total);
    return decode(frame);
}

CaServer::CaServer(CertAuthority& ca, const std::string& host, uint16_t port)
    : broker_(ca) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0)
        throw ProtocolError(std::string("socket failed: ") + std::strerror(errno));
    const int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (host == "0.0.0.0" || host.empty()) {
        addr.sin_addr.s_addr = INADDR_ANY;
    } else if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        addrinfo hints{};
        hints.ai_family = AF_INET;
        addrinfo* res = nullptr;
        if (::getaddrinfo(host.c_str(), nullptr, &hints, &res) != 0 || !res) {
            ::close(listen_fd_);
            throw ProtocolError("cannot resolve bind host '" + host + "'");
        }
        addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
        ::freeaddrinfo(res);
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        const std::string err = std::strerror(errno);
        ::close(listen_fd_);
        throw ProtocolError("bind failed: " + err);
    }
    if (::listen(listen_fd_, 64) < 0) {
        const std::string err = std::strerror(errno);
        ::close(listen_fd_);
        throw ProtocolError("listen failed: " + err);
    }
    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
    port_ = ntohs(bound.sin_port);
}

CaServer::~CaServer() { stop(); }

void CaServer::run() { accept_loop(); }

void CaServer::start() {
    accept_thread_ = std::thread([this] { accept_loop(); });
}

void CaServer::stop() {
    if (stopping_.exchange(true)) {
        if (accept_thread_.joinable()) accept_thread_.join();
        return;
    }
    if (listen_fd_ >= 0) {
        ::shutdown(listen_fd_, SHUT_RDWR);
        ::close(listen_fd_);
        listen_fd_ = -1;
    }
    {
        std::lock_guard lock(conns_mu_);
        for (auto& [id, conn] : conns_) ::shutdown(conn->fd, SHUT_RDWR);
    }
    if (accept_thread_.joinable()) accept_thread_.join();
    std::lock_guard lock(workers_mu_);
    for (auto& t : workers_)
        if (t.joinable()) t.join();
    workers_.clear();
}

void CaServer::accept_loop() {
    while (!stopping_.load()) {
        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (errno == EINTR) continue;
            break;   // listen socket closed by stop()
        }
        const int conn_id = next_conn_id_++;
        {
            auto conn = std::make_shared<Conn>();
            conn->fd = fd;
            std::lock_guard lock(conns_mu_);
            conns_[conn_id] = std::move(conn);
        }
        std::lock_guard lock(workers_mu_);
        workers_.emplace_back(
            [this, conn_id, fd] { handle_connection(conn_id, fd); });
    }
}

void CaServer::handle_connection(int conn_id, int fd) {
    try {
        while (true) {
            const ProtocolMessage msg = read_frame(fd);
            for (const auto& [target, reply] : broker_.on_message(conn_id, msg)) {
                try {
                    deliver(target, reply);
                } catch (const ProtocolError&) {
                    // target hung up; its handler cleans up
                }
            }
        }
    } catch (const ProtocolError&) {
        // disconnect or shutdown
    } catch (const CodecError&) {
        // malformed frame; drop the connection
    } catch (const std::exception& e) {
        // keep the service alive on unexpected broker failures
        try {
            deliver(conn_id, make_error(SessionId{}, kErrInternal, e.what()));
        } catch (const ProtocolError&) {
        }
    }
    broker_.on_disconnect(conn_id);
    std::lock_guard lock(conns_mu_);
    conns_.erase(conn_id);
    ::close(fd);
}

void CaServer::deliver(int conn_id, const ProtocolMessage& msg) {
    std::shared_ptr<Conn> conn;
    {
        std::lock_guard lock(conns_mu_);
        const auto it = conns_.find(conn_id);
        if (it == conns_.end()) return;   // peer already gone
        conn = it->second;
    }
    std::lock_guard wlock(conn->write_mu);
    write_frame(conn->fd, msg);
}

uint64_t request_session(const std::string& host, uint16_t port,
                         const std::string& id, const std::string& peer,
                         uint64_t secret, uint64_t seed, bool use_nonce) {
    std::mt19937_64 rng(seed);
    const SessionId sid = make_session_id(rng);
    std::optional<Nonce> nonce;
    if (use_nonce) {
        Nonce n;
        for (size_t i = 0; i < n.size(); i += 8) {
            const uint64_t r = rng();
            for (size_t j = 0; j < 8; ++j)
                n[i + j] = static_cast<uint8_t>(r >> (8 * j));
        }
        nonce = n;
    }

    const int fd = connect_to(host, port);
    uint64_t p = 0;
    try {
        write_frame(fd, make_request(sid, id, peer, nonce));
        const ProtocolMessage reply = read_frame(fd);
        if (reply.type == MsgType::error) {
            const auto& e = std::get<ErrorPayload>(reply.payload);
            throw ProtocolError("CA refused session (code " +
                                std::to_string(e.code) + "): " + e.message);
        }
        if (reply.type != MsgType::keyshare)
            throw ProtocolError("unexpected frame type from CA");
        const auto& share = std::get<KeysharePayload>(reply.payload);
        p = nonce ? party_recover(share.key, secret, *nonce)
                  : party_recover(share.key, secret);
    } catch (...) {
        ::close(fd);
        throw;
    }
    ::close(fd);
    return p;
}

} // namespace gbx::net
