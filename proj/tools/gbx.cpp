// gbx.cpp
// Command-line front end: sequence generation, randomness analysis
// exports, published-table comparisons, and the session-key protocol
// (in-process demo, CA service, party client).
//
// Exit codes: 0 success, 1 invalid arguments, 2 runtime error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gbx/analysis.hpp"
#include "gbx/ca.hpp"
#include "gbx/errors.hpp"
#include "gbx/goldbach.hpp"
#include "gbx/net.hpp"
#include "gbx/primes.hpp"
#include "gbx/protocol.hpp"
#include "gbx/sha256.hpp"
#include "gbx/tables.hpp"
#include "gbx/wire.hpp"

namespace {

using namespace gbx;

uint64_t even_floor(uint64_t v) { return v - v % 2; }

// "2n" reads --max N as the largest center; "4n" reads it as a bound on
// the center index n, i.e. centers up to 2N.
uint64_t center_cap(const std::string& bound, uint64_t max) {
    return bound == "4n" ? even_floor(2 * max) : even_floor(max);
}

uint64_t mseq_sieve_limit(uint64_t k, uint64_t hi) {
    return hi + k * (hi - 3) + 1;
}

BSequence b_sequence_for(uint64_t k, uint64_t hi) {
    const PrimeSieve sieve(mseq_sieve_limit(k, hi));
    return to_b_sequence(m_sequence(sieve, k, Range{6, hi}));
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
    f << text;
    if (!f) throw std::runtime_error("write to '" + out_path + "' failed");
}

std::pair<std::string, uint16_t> split_addr(const std::string& addr) {
    const size_t colon = addr.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == addr.size())
        throw std::invalid_argument("address must be HOST:PORT, got '" + addr +
                                    "'");
    const int port = std::stoi(addr.substr(colon + 1));
    if (port < 0 || port > 65535)
        throw std::invalid_argument("port out of range in '" + addr + "'");
    return {addr.substr(0, colon), static_cast<uint16_t>(port)};
}

std::string mseq_table(const MSequence& ms) {
    std::ostringstream out;
    out << std::left << std::setw(8) << "two_n" << std::setw(8) << "lower"
        << std::setw(8) << "upper" << std::setw(6) << "m" << "span_sum\n";
    for (const auto& e : ms.entries)
        out << std::left << std::setw(8) << e.two_n << std::setw(8) << e.lower
            << std::setw(8) << e.upper << std::setw(6) << e.m << e.span_sum
            << "\n";
    return out.str();
}

std::string mseq_csv(const MSequence& ms) {
    std::string out = "two_n,lower,upper,m,span_sum\n";
    for (const auto& e : ms.entries)
        out += std::to_string(e.two_n) + "," + std::to_string(e.lower) + "," +
               std::to_string(e.upper) + "," + std::to_string(e.m) + "," +
               std::to_string(e.span_sum) + "\n";
    return out;
}

std::string mseq_json(const MSequence& ms) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : ms.entries)
        rows.push_back({{"two_n", e.two_n},
                        {"lower", e.lower},
                        {"upper", e.upper},
                        {"m", e.m},
                        {"span_sum", e.span_sum}});
    return rows.dump() + "\n";
}

std::string run_demo_handshake(uint64_t a, uint64_t b, uint64_t seed,
                               bool use_nonce) {
    std::ostringstream out;
    std::ostringstream audit_sink;
    AuditLog audit(audit_sink);

    Registry reg;
    reg.add("alice", a);
    reg.add("bob", b);
    const PrimeSieve sieve(a + b);
    CertAuthority ca(std::move(reg), sieve, audit, seed);
    SessionBroker broker(ca);

    std::mt19937_64 party_rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const SessionId sid = make_session_id(party_rng);
    std::optional<Nonce> nonce_a, nonce_b;
    if (use_nonce) {
        Nonce na, nb;
        for (auto& x : na) x = static_cast<uint8_t>(party_rng());
        for (auto& x : nb) x = static_cast<uint8_t>(party_rng());
        nonce_a = na;
        nonce_b = nb;
    }

    const auto show = [&](const char* step, const char* dir,
                          const ProtocolMessage& msg) {
        const auto frame = encode(msg);
        out << step << "  " << dir << "  " << hex(frame) << "\n";
    };

    // Steps 1 and 2: both parties contact the CA (loopback conns 0 and 1).
    const auto request = make_request(sid, "alice", "bob", nonce_a);
    show("step1 REQUEST ", "alice->ca", request);
    auto replies = broker.on_message(0, request);
    if (!replies.empty())
        throw std::runtime_error("unexpected CA reply to REQUEST");

    const auto agree = make_agree(sid, "bob", "alice", nonce_b);
    show("step2 AGREE   ", "bob->ca  ", agree);
    replies = broker.on_message(1, agree);

    // Step 3: CA fans out the masked shares.
    uint64_t p_alice = 0, p_bob = 0;
    for (const auto& [conn, msg] : replies) {
        if (msg.type == MsgType::error) {
            const auto& e = std::get<ErrorPayload>(msg.payload);
            throw std::runtime_error("CA refused session (code " +
                                     std::to_string(e.code) + "): " + e.message);
        }
        const auto& share = std::get<KeysharePayload>(msg.payload);
        if (conn == 0) {
            show("step3 KEYSHARE", "ca->alice", msg);
            p_alice = use_nonce ? party_recover(share.key, a, *nonce_a)
                                : party_recover(share.key, a);
        } else {
            show("step3 KEYSHARE", "ca->bob  ", msg);
            p_bob = use_nonce ? party_recover(share.key, b, *nonce_b)
                              : party_recover(share.key, b);
        }
    }

    out << "step4 alice recovers p = " << p_alice << "\n";
    out << "step5 bob recovers p = " << p_bob << "\n";
    if (p_alice != p_bob || p_alice == 0)
        throw std::runtime_error("handshake failed: parties disagree on p");

    // Step 6: both sides seed the keystream from p.
    const DSequence ds(p_alice, 128);
    std::string ks;
    for (size_t i = 0; i < 64; ++i) ks.push_back('0' + ds.bits()[i]);
    out << "step6 keystream 1/p first 64 bits: " << ks << "\n";

    // Stdout must stay deterministic; the timestamped record goes only to
    // the audit sink.
    const uint64_t q = a + b - p_alice;
    out << "audit: session recorded, n=" << a + b << " p=" << p_alice
        << " q=" << q << "\n";
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Goldbach ellipse sequence toolkit and partition-based "
                 "session-key CA"};
    app.require_subcommand(1);

    std::string out_path;
    uint64_t seed = 1;
    app.add_option("--out", out_path, "write output to FILE instead of stdout");
    app.add_option("--seed", seed, "seed for randomized subcommands");

    // --- sieve ---------------------------------------------------
    auto* sieve_cmd = app.add_subcommand("sieve", "prime sieve queries");
    sieve_cmd->fallthrough();
    uint64_t sieve_limit = 0;
    bool sieve_count = false, sieve_list = false;
    sieve_cmd->add_option("--limit", sieve_limit, "inclusive upper bound")
        ->required();
    sieve_cmd->add_flag("--count", sieve_count, "print the number of primes");
    sieve_cmd->add_flag("--list", sieve_list, "print one prime per line");
    sieve_cmd->callback([&] {
        const PrimeSieve sieve(sieve_limit);
        std::string text;
        if (sieve_list) {
            for (uint64_t p : sieve.primes()) text += std::to_string(p) + "\n";
        } else {
            text = std::to_string(sieve.count()) + "\n";
        }
        emit(out_path, text);
    });

    // --- partitions ----------------------------------------------
    auto* part_cmd =
        app.add_subcommand("partitions", "Goldbach partitions of an even n");
    part_cmd->fallthrough();
    uint64_t part_n = 0;
    part_cmd->add_option("n", part_n, "even number >= 4")->required();
    part_cmd->callback([&] {
        const PrimeSieve sieve(std::max<uint64_t>(part_n, 4));
        std::string text = "p,q\n";
        for (const auto& part : partitions(sieve, part_n))
            text += std::to_string(part.p) + "," + std::to_string(part.q) + "\n";
        emit(out_path, text);
    });

    // --- parity ---------------------------------------------------
    auto* parity_cmd = app.add_subcommand(
        "parity", "partition-count parity bits for even n = 4..max");
    parity_cmd->fallthrough();
    uint64_t parity_max = 0;
    parity_cmd->add_option("--max", parity_max, "largest even n")->required();
    parity_cmd->callback([&] {
        const PrimeSieve sieve(std::max<uint64_t>(parity_max, 4));
        emit(out_path, parity_sequence(sieve, parity_max).bits() + "\n");
    });

    // --- circle ---------------------------------------------------
    auto* circle_cmd =
        app.add_subcommand("circle", "centers with primes at distance r");
    circle_cmd->fallthrough();
    uint64_t circle_r = 0, circle_max = 0, circle_min = 4;
    circle_cmd->add_option("--radius", circle_r, "circle radius")->required();
    circle_cmd->add_option("--max", circle_max, "largest center")->required();
    circle_cmd->add_option("--min", circle_min, "smallest center");
    circle_cmd->callback([&] {
        const PrimeSieve sieve(circle_max + circle_r);
        std::string text = "two_n,lower,upper\n";
        for (const auto& e :
             circle_with_radius(sieve, circle_r,
                                Range{even_floor(circle_min), even_floor(circle_max)}))
            text += std::to_string(e.two_n) + "," + std::to_string(e.lower) +
                    "," + std::to_string(e.upper) + "\n";
        emit(out_path, text);
    });

    // --- mseq -----------------------------------------------------
    auto* mseq_cmd =
        app.add_subcommand("mseq", "minimal-m ellipse sequence for odd k");
    mseq_cmd->fallthrough();
    uint64_t mseq_k = 5, mseq_max = 0;
    std::string mseq_bound = "2n", mseq_format = "csv";
    mseq_cmd->add_option("--k", mseq_k, "odd k >= 1")->required();
    mseq_cmd->add_option("--max", mseq_max, "range bound")->required();
    mseq_cmd
        ->add_option("--center-bound", mseq_bound,
                     "read --max as largest center (2n) or index bound (4n)")
        ->check(CLI::IsMember({"2n", "4n"}));
    mseq_cmd->add_option("--format", mseq_format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    mseq_cmd->callback([&] {
        const uint64_t hi = center_cap(mseq_bound, mseq_max);
        const PrimeSieve sieve(mseq_sieve_limit(mseq_k, hi));
        const MSequence ms = m_sequence(sieve, mseq_k, Range{6, hi});
        if (mseq_format == "table")
            emit(out_path, mseq_table(ms));
        else if (mseq_format == "json")
            emit(out_path, mseq_json(ms));
        else
            emit(out_path, mseq_csv(ms));
    });

    // --- autocorr ---------------------------------------------------
    auto* ac_cmd = app.add_subcommand(
        "autocorr", "autocorrelation of the k-ellipse b-sequence");
    ac_cmd->fallthrough();
    uint64_t ac_k = 5, ac_max = 0, ac_maxlag = 100;
    std::string ac_mode = "circular", ac_bound = "2n", ac_format = "csv";
    ac_cmd->add_option("--k", ac_k, "odd k >= 1")->required();
    ac_cmd->add_option("--max", ac_max, "range bound")->required();
    ac_cmd->add_option("--max-lag", ac_maxlag, "largest lag");
    ac_cmd->add_option("--mode", ac_mode, "circular or linear")
        ->check(CLI::IsMember({"circular", "linear"}));
    ac_cmd->add_option("--center-bound", ac_bound, "2n or 4n")
        ->check(CLI::IsMember({"2n", "4n"}));
    ac_cmd->add_option("--format", ac_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    ac_cmd->callback([&] {
        const BSequence b = b_sequence_for(ac_k, center_cap(ac_bound, ac_max));
        const auto series = autocorrelation(
            b, ac_maxlag,
            ac_mode == "linear" ? CorrMode::linear : CorrMode::circular);
        emit(out_path,
             ac_format == "json" ? to_json(series) + "\n" : to_csv(series));
    });

    // --- windows ----------------------------------------------------
    auto* win_cmd = app.add_subcommand(
        "windows", "moving-window substring statistics of the b-sequence");
    win_cmd->fallthrough();
    uint64_t win_k = 5, win_max = 0, win_wmin = 2, win_wmax = 20;
    bool win_unique = false;
    std::string win_bound = "2n", win_format = "csv";
    win_cmd->add_option("--k", win_k, "odd k >= 1")->required();
    win_cmd->add_option("--max", win_max, "range bound")->required();
    win_cmd->add_option("--w-min", win_wmin, "smallest window length");
    win_cmd->add_option("--w-max", win_wmax, "largest window length");
    win_cmd->add_flag("--unique", win_unique,
                      "emit windows occurring exactly once per length "
                      "(interpretive per-length count)");
    win_cmd->add_option("--center-bound", win_bound, "2n or 4n")
        ->check(CLI::IsMember({"2n", "4n"}));
    win_cmd->add_option("--format", win_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    win_cmd->callback([&] {
        const std::string bits =
            b_sequence_for(win_k, center_cap(win_bound, win_max)).bits();
        std::string text;
        if (win_unique) {
            const auto stats = unique_window_profile(bits, win_wmin, win_wmax);
            text = win_format == "json" ? to_json(stats) + "\n" : to_csv(stats);
        } else if (win_format == "json") {
            nlohmann::json rows = nlohmann::json::array();
            for (uint64_t w = win_wmin; w <= win_wmax; ++w)
                rows.push_back(
                    nlohmann::json::parse(to_json(count_windows(bits, w))));
            text = rows.dump() + "\n";
        } else {
            text = "w,pattern,count\n";
            for (uint64_t w = win_wmin; w <= win_wmax; ++w) {
                const auto wc = count_windows(bits, w);
                for (const auto& [pat, cnt] : wc.counts)
                    text += std::to_string(w) + "," + pat + "," +
                            std::to_string(cnt) + "\n";
            }
        }
        emit(out_path, text);
    });

    // --- locate -----------------------------------------------------
    auto* loc_cmd =
        app.add_subcommand("locate", "starting positions of a bit pattern");
    loc_cmd->fallthrough();
    std::string loc_pattern, loc_bits, loc_bound = "2n";
    uint64_t loc_k = 0, loc_max = 0;
    bool loc_parity = false;
    loc_cmd->add_option("--pattern", loc_pattern, "bit pattern over {0,1}")
        ->required();
    loc_cmd->add_option("--bits", loc_bits, "explicit bit string to search");
    loc_cmd->add_option("--k", loc_k, "search the k-ellipse b-sequence");
    loc_cmd->add_option("--max", loc_max, "range bound for --k/--parity");
    loc_cmd->add_flag("--parity", loc_parity, "search the parity sequence");
    loc_cmd->add_option("--center-bound", loc_bound, "2n or 4n")
        ->check(CLI::IsMember({"2n", "4n"}));
    loc_cmd->callback([&] {
        std::string bits = loc_bits;
        if (bits.empty()) {
            if (loc_parity) {
                if (loc_max < 4)
                    throw std::invalid_argument("--parity needs --max >= 4");
                const PrimeSieve sieve(loc_max);
                bits = parity_sequence(sieve, loc_max).bits();
            } else if (loc_k > 0) {
                if (loc_max < 6)
                    throw std::invalid_argument("--k needs --max >= 6");
                bits = b_sequence_for(loc_k, center_cap(loc_bound, loc_max)).bits();
            } else {
                throw std::invalid_argument(
                    "locate needs one of --bits, --k or --parity");
            }
        }
        std::string text;
        for (size_t pos : locate(bits, loc_pattern))
            text += std::to_string(pos) + "\n";
        emit(out_path, text);
    });

    // --- compare-tables / compare-table2 -----------------------------
    auto* cmp_cmd = app.add_subcommand(
        "compare-tables", "computed values vs the published tables");
    cmp_cmd->fallthrough();
    std::string cmp_table = "all", cmp_bound = "4n";
    uint64_t cmp_max = 2000;
    cmp_cmd->add_option("--table", cmp_table, "1, 2, 3, 4 or all")
        ->check(CLI::IsMember({"1", "2", "3", "4", "all"}));
    cmp_cmd->add_option("--max", cmp_max, "published range bound (n < max)");
    cmp_cmd->add_option("--center-bound", cmp_bound, "2n or 4n")
        ->check(CLI::IsMember({"2n", "4n"}));
    cmp_cmd->callback([&] {
        const uint64_t hi = center_cap(cmp_bound, cmp_max);
        const PrimeSieve sieve(compare_sieve_limit(hi));
        std::string text;
        if (cmp_table == "1")
            text = compare_table1(sieve);
        else if (cmp_table == "2")
            text = compare_table2(sieve, hi);
        else if (cmp_table == "3")
            text = compare_table3(sieve, hi);
        else if (cmp_table == "4")
            text = compare_table4(sieve, hi);
        else
            text = compare_all_tables(sieve, hi);
        emit(out_path, text);
    });

    auto* cmp2_cmd = app.add_subcommand(
        "compare-table2", "diagnostic for the published substring counts");
    cmp2_cmd->fallthrough();
    uint64_t cmp2_max = 2000;
    std::string cmp2_bound = "4n";
    cmp2_cmd->add_option("--max", cmp2_max, "published range bound (n < max)");
    cmp2_cmd->add_option("--center-bound", cmp2_bound, "2n or 4n")
        ->check(CLI::IsMember({"2n", "4n"}));
    cmp2_cmd->callback([&] {
        const uint64_t hi = center_cap(cmp2_bound, cmp2_max);
        const PrimeSieve sieve(compare_sieve_limit(hi));
        emit(out_path, compare_table2(sieve, hi));
    });

    // --- demo-handshake ----------------------------------------------
    auto* demo_cmd = app.add_subcommand(
        "demo-handshake", "run all six protocol steps in-process");
    demo_cmd->fallthrough();
    uint64_t demo_a = 11, demo_b = 23;
    bool demo_nonce = false;
    demo_cmd->add_option("--a", demo_a, "alice's secret odd prime")->required();
    demo_cmd->add_option("--b", demo_b, "bob's secret odd prime")->required();
    demo_cmd->add_flag("--nonce", demo_nonce, "replay-hardened variant");
    demo_cmd->callback(
        [&] { emit(out_path, run_demo_handshake(demo_a, demo_b, seed, demo_nonce)); });

    // --- ca serve ------------------------------------------------------
    auto* ca_cmd = app.add_subcommand("ca", "certification authority");
    ca_cmd->fallthrough();
    auto* serve_cmd = ca_cmd->add_subcommand("serve", "run the framed TCP CA");
    serve_cmd->fallthrough();
    std::string serve_registry, serve_addr = "127.0.0.1:7654", serve_audit;
    serve_cmd->add_option("--registry", serve_registry, "id,prime file")
        ->required();
    serve_cmd->add_option("--addr", serve_addr, "HOST:PORT to listen on");
    serve_cmd->add_option("--audit", serve_audit, "audit JSON-lines file")
        ->required();
    serve_cmd->callback([&] {
        Registry reg = Registry::load(serve_registry);
        if (reg.size() < 2)
            throw std::runtime_error("registry needs at least two parties");
        std::ofstream audit_file(serve_audit, std::ios::app);
        if (!audit_file)
            throw std::runtime_error("cannot open audit file '" + serve_audit +
                                     "'");
        AuditLog audit(audit_file);
        const PrimeSieve sieve(2 * reg.max_secret());
        CertAuthority ca(std::move(reg), sieve, audit, seed);
        const auto [host, port] = split_addr(serve_addr);
        net::CaServer server(ca, host, port);
        std::cerr << "gbx ca: listening on " << host << ":" << server.port()
                  << ", audit -> " << serve_audit << "\n";
        server.run();
    });

    // --- party request ---------------------------------------------------
    auto* party_cmd = app.add_subcommand("party", "protocol party");
    party_cmd->fallthrough();
    auto* req_cmd =
        party_cmd->add_subcommand("request", "request a session key via the CA");
    req_cmd->fallthrough();
    std::string req_id, req_peer, req_ca = "127.0.0.1:7654";
    uint64_t req_secret = 0;
    bool req_nonce = false;
    req_cmd->add_option("--id", req_id, "own party id")->required();
    req_cmd->add_option("--peer", req_peer, "peer party id")->required();
    req_cmd->add_option("--secret", req_secret, "own secret odd prime")
        ->required();
    req_cmd->add_option("--ca", req_ca, "CA address HOST:PORT");
    req_cmd->add_flag("--nonce", req_nonce, "replay-hardened variant");
    req_cmd->callback([&] {
        const auto [host, port] = split_addr(req_ca);
        const uint64_t p =
            net::request_session(host, port, req_id, req_peer, req_secret, seed,
                                 req_nonce);
        const DSequence ds(p, 128);
        std::string ks;
        for (size_t i = 0; i < 64; ++i) ks.push_back('0' + ds.bits()[i]);
        emit(out_path, "session key p = " + std::to_string(p) +
                           "\nkeystream 1/p first 64 bits: " + ks + "\n");
    });

    // Subcommand callbacks run during parse, so module errors surface
    // here and map onto the documented exit codes.
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
