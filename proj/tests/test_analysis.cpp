// test_analysis.cpp
// Autocorrelation against the direct-summation oracle, window statistics
// against hand enumeration and the naive scan, and the export formats.

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "gbx/analysis.hpp"
#include "gbx/goldbach.hpp"
#include "gbx/serial.hpp"

using namespace gbx;

namespace {

BSequence seq_of(std::initializer_list<int> symbols) {
    std::vector<int8_t> s;
    for (int v : symbols) s.push_back(static_cast<int8_t>(v));
    return BSequence(std::move(s), "test");
}

std::string random_bits(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::string bits(n, '0');
    for (auto& c : bits)
        if (rng() & 1) c = '1';
    return bits;
}

} // namespace

TEST_CASE("C(0) is exactly 1 for any nonempty sequence, both modes") {
    for (auto mode : {CorrMode::circular, CorrMode::linear}) {
        CHECK(autocorrelation(seq_of({1}), 0, mode).values[0] == 1.0);
        CHECK(autocorrelation(seq_of({-1, 1, 1, -1, 1}), 3, mode).values[0] ==
              1.0);
    }
}

TEST_CASE("perfectly alternating sequence has circular C(1) = -1") {
    const auto series =
        autocorrelation(seq_of({1, -1, 1, -1}), 1, CorrMode::circular);
    CHECK(series.values[1] == -1.0);
}

TEST_CASE("autocorrelation argument validation") {
    CHECK_THROWS_AS(autocorrelation(BSequence{}, 0, CorrMode::circular),
                    std::invalid_argument);
    CHECK_THROWS_AS(autocorrelation(seq_of({1, -1}), 2, CorrMode::circular),
                    std::invalid_argument);
}

TEST_CASE("k=5 autocorrelation matches the direct-summation oracle to 1e-12") {
    const PrimeSieve sieve(24001);
    const auto b = to_b_sequence(m_sequence(sieve, 5, Range{6, 4000}));
    for (auto mode : {CorrMode::circular, CorrMode::linear}) {
        const auto series = autocorrelation(b, 100, mode);
        for (size_t lag = 0; lag <= 100; ++lag) {
            const double want = serial::autocorrelation_at(
                b.symbols(), lag, mode == CorrMode::circular);
            REQUIRE(series.values[lag] == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("circular series satisfies C(i) = C(L-i)") {
    const PrimeSieve sieve(6001);
    const auto b = to_b_sequence(m_sequence(sieve, 1, Range{6, 1000}));
    const size_t len = b.size();
    const auto series = autocorrelation(b, len - 1, CorrMode::circular);
    for (size_t i = 1; i < len; ++i)
        REQUIRE(series.values[i] == doctest::Approx(series.values[len - i])
                                        .epsilon(1e-15));
}

TEST_CASE("|C(i)| <= 1 across lags") {
    const auto bits = random_bits(512, 7);
    std::vector<int8_t> symbols;
    for (char c : bits) symbols.push_back(c == '1' ? 1 : -1);
    const BSequence b(std::move(symbols), "random");
    for (auto mode : {CorrMode::circular, CorrMode::linear}) {
        const auto series = autocorrelation(b, 200, mode);
        for (double v : series.values) REQUIRE(std::abs(v) <= 1.0);
    }
}

TEST_CASE("window counts of 1101 at w=2") {
    const auto wc = count_windows("1101", 2);
    CHECK(wc.counts == std::map<std::string, uint64_t>{
                           {"01", 1}, {"10", 1}, {"11", 1}});
    CHECK(wc.length == 4);
}

TEST_CASE("window counts of the parity prefix 111010000 at w=3") {
    const auto wc = count_windows("111010000", 3);
    CHECK(wc.counts == std::map<std::string, uint64_t>{{"000", 2},
                                                       {"010", 1},
                                                       {"100", 1},
                                                       {"101", 1},
                                                       {"110", 1},
                                                       {"111", 1}});
}

TEST_CASE("w=1 counts partition the positions") {
    const auto bits = random_bits(300, 11);
    const auto wc = count_windows(bits, 1);
    uint64_t total = 0;
    for (const auto& [pat, cnt] : wc.counts) total += cnt;
    CHECK(total == bits.size());
}

TEST_CASE("window count totals equal L - w + 1 for every w") {
    const auto bits = random_bits(257, 3);
    for (size_t w = 1; w <= 20; ++w) {
        const auto wc = count_windows(bits, w);
        uint64_t total = 0;
        for (const auto& [pat, cnt] : wc.counts) total += cnt;
        REQUIRE(total == bits.size() - w + 1);
    }
}

TEST_CASE("transition identity: |count(01) - count(10)| <= 1") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const auto bits = random_bits(101 + seed * 13, seed);
        const auto wc = count_windows(bits, 2);
        const auto get = [&](const char* p) {
            const auto it = wc.counts.find(p);
            return it == wc.counts.end() ? uint64_t{0} : it->second;
        };
        const uint64_t c01 = get("01"), c10 = get("10");
        REQUIRE((c01 > c10 ? c01 - c10 : c10 - c01) <= 1);
    }
}

TEST_CASE("extension identity with suffix correction") {
    const auto bits = random_bits(400, 17);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const size_t w = 1 + rng() % 10;
        std::string x(w, '0');
        for (auto& c : x)
            if (rng() & 1) c = '1';
        const uint64_t cx = serial::count_pattern(bits, x);
        const uint64_t c0 = serial::count_pattern(bits, x + "0");
        const uint64_t c1 = serial::count_pattern(bits, x + "1");
        const uint64_t suffix =
            bits.size() >= w && bits.substr(bits.size() - w) == x ? 1 : 0;
        REQUIRE(cx == c0 + c1 + suffix);
    }
}

TEST_CASE("window counting rejects bad arguments") {
    CHECK_THROWS_AS(count_windows("0101", 0), std::invalid_argument);
    CHECK_THROWS_AS(count_windows("0101", 5), std::invalid_argument);
    CHECK_THROWS_AS(count_windows("01x1", 2), std::invalid_argument);
}

TEST_CASE("unique window counts by enumeration") {
    // "11", "10", "00" each occur once in 1100.
    CHECK(unique_window_count("1100", 2) == 3);
    CHECK(unique_window_count("0000", 2) == 0);
}

TEST_CASE("unique window count matches the quadratic oracle on the parity "
          "string") {
    const std::string bits = "111010000111010000101010111001100101";
    for (size_t w : {1, 2, 3, 5, 10, 20})
        REQUIRE(unique_window_count(bits, w) ==
                serial::unique_window_count(bits, w));
}

TEST_CASE("unique count never exceeds the window total") {
    const auto bits = random_bits(200, 23);
    for (size_t w = 1; w <= 20; ++w)
        REQUIRE(unique_window_count(bits, w) <= bits.size() - w + 1);
}

TEST_CASE("unique window profile equals per-w calls") {
    const auto bits = random_bits(150, 31);
    const auto stats = unique_window_profile(bits, 2, 12);
    REQUIRE(stats.counts.size() == 11);
    for (size_t w = 2; w <= 12; ++w)
        REQUIRE(stats.counts[w - 2] == unique_window_count(bits, w));
}

TEST_CASE("locate finds overlapping matches in order") {
    CHECK(locate("10101", "101") == std::vector<size_t>{0, 2});
    CHECK(locate("1110", "00").empty());
    CHECK(locate("111", "1111").empty());
}

TEST_CASE("locate agrees with the naive scan on random input") {
    const auto bits = random_bits(2000, 41);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::string pattern(16, '0');
        for (auto& c : pattern)
            if (rng() & 1) c = '1';
        REQUIRE(locate(bits, pattern) == serial::locate(bits, pattern));
    }
}

TEST_CASE("correlation CSV has the documented shape") {
    CorrelationSeries series;
    series.mode = CorrMode::circular;
    series.values = {1.0, 0.1, -0.05};
    CHECK(to_csv(series) == "lag,value\n0,1\n1,0.1\n2,-0.05\n");
}

TEST_CASE("correlation CSV round-trips the values") {
    const PrimeSieve sieve(1000);
    const auto b = to_b_sequence(m_sequence(sieve, 1, Range{6, 160}));
    const auto series = autocorrelation(b, 20, CorrMode::circular);
    const auto parsed = correlation_from_csv(to_csv(series));
    REQUIRE(parsed.values.size() == series.values.size());
    for (size_t i = 0; i < series.values.size(); ++i)
        REQUIRE(parsed.values[i] ==
                doctest::Approx(series.values[i]).epsilon(1e-9));
}

TEST_CASE("window counts round-trip through CSV and JSON") {
    const auto bits = random_bits(300, 53);
    const auto wc = count_windows(bits, 6);
    CHECK(window_counts_from_csv(to_csv(wc)) == wc);
    CHECK(window_counts_from_json(to_json(wc)) == wc);
}

TEST_CASE("unique-window CSV lists one row per w") {
    UniqueWindowStats stats;
    stats.w_min = 2;
    stats.w_max = 4;
    stats.counts = {5, 7, 9};
    CHECK(to_csv(stats) == "w,unique_count\n2,5\n3,7\n4,9\n");
}

TEST_CASE("malformed CSV is rejected") {
    CHECK_THROWS_AS(window_counts_from_csv("nope\n1,00,2\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(window_counts_from_csv("w,pattern,count\n2,0x,3\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(correlation_from_csv("lag,value\n1,0.5\n"),
                    std::invalid_argument);
}
