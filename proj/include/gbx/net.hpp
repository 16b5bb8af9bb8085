// net.hpp
// Byte-stream transport for the framed protocol: a threaded CA server
// around SessionBroker and a one-shot party client. Loopback tests and
// the CLI share these; the state machine itself lives in ca.hpp.

#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "gbx/ca.hpp"
#include "gbx/wire.hpp"

namespace gbx::net {

// Blocking framed IO on a connected socket. Throw ProtocolError on EOF,
// short reads/writes, or frames bigger than the 1 MiB sanity cap.
void write_frame(int fd, const ProtocolMessage& msg);
ProtocolMessage read_frame(int fd);

class CaServer {
public:
    // Binds immediately; port 0 picks an ephemeral port.
    CaServer(CertAuthority& ca, const std::string& host, uint16_t port);
    ~CaServer();

    CaServer(const CaServer&) = delete;
    CaServer& operator=(const CaServer&) = delete;

    uint16_t port() const { return port_; }

    void run();     // accept loop on the calling thread (CLI serve)
    void start();   // accept loop on a background thread (tests)
    void stop();

private:
    void accept_loop();
    void handle_connection(int conn_id, int fd);
    void deliver(int conn_id, const ProtocolMessage& msg);

    struct Conn {
        int fd = -1;
        std::mutex write_mu;
    };

    SessionBroker broker_;
    int listen_fd_ = -1;
    uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::atomic<int> next_conn_id_{0};
    std::map<int, std::shared_ptr<Conn>> conns_;
    std::mutex conns_mu_;
    std::vector<std::thread> workers_;
    std::mutex workers_mu_;
    std::thread accept_thread_;
};

// Client side of Steps 1/2/4/5: sends one REQUEST and blocks until the
// CA answers. Returns the recovered session key p; throws ProtocolError
// on ERROR frames and IntegrityFailure on implausible shares.
uint64_t request_session(const std::string& host, uint16_t port,
                         const std::string& id, const std::string& peer,
                         uint64_t secret, uint64_t seed,
                         bool use_nonce = false);

} // namespace gbx::net
