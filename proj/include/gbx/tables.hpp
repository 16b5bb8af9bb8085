// tables.hpp
// The published reference tables (ellipse rows for k=5, pair/triple
// substring counts, and per-length string counts for k=5 and k=1) as
// static data, plus the diff reports comparing them against what this
// library computes.
//
// The reports are diagnostics: rows the published tables omit or that
// cannot arise under overlapping window counting are called out as
// documented discrepancies rather than forced to match.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "gbx/primes.hpp"

namespace gbx {

struct Table1Row {
    uint64_t two_n;
    uint64_t lower;
    uint64_t upper;
    uint64_t m;
    uint64_t span_sum;
};

// Published k=5 ellipse table.
extern const std::array<Table1Row, 13> kTable1;

// Published substring counts (k=5, n < 2000): pattern -> count.
extern const std::array<std::pair<const char*, uint64_t>, 7> kTable2;

// Published per-length counts, w = 2..20.
extern const std::array<std::pair<int, uint64_t>, 19> kTable3;   // k=5
extern const std::array<std::pair<int, uint64_t>, 19> kTable4;   // k=1

// Reports. center_hi is the largest even center scanned; published data
// uses "n < 2000", read here as centers 2n up to 2*(2000-1).
std::string compare_table1(const PrimeSieve& sieve);
std::string compare_table2(const PrimeSieve& sieve, uint64_t center_hi);
std::string compare_table3(const PrimeSieve& sieve, uint64_t center_hi);
std::string compare_table4(const PrimeSieve& sieve, uint64_t center_hi);
std::string compare_all_tables(const PrimeSieve& sieve, uint64_t center_hi);

// Sieve limit needed by the ellipse scan behind these reports.
uint64_t compare_sieve_limit(uint64_t center_hi);

} // namespace gbx
