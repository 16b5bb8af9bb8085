// tables.cpp

#include "gbx/tables.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <iomanip>

#include "gbx/analysis.hpp"
#include "gbx/goldbach.hpp"

namespace gbx {

const std::array<Table1Row, 13> kTable1 = {{
    {6, 5, 11, 1, 16},
    {8, 7, 13, 1, 20},
    {12, 11, 17, 1, 28},
    {14, 13, 19, 1, 32},
    {18, 17, 23, 1, 40},
    {22, 19, 37, 3, 56},
    {24, 23, 29, 1, 52},
    {26, 23, 41, 3, 64},
    {32, 31, 37, 1, 68},
    {34, 29, 59, 5, 88},
    {36, 31, 61, 5, 92},
    {38, 37, 43, 1, 80},
    {42, 41, 47, 1, 88},
}};

const std::array<std::pair<const char*, uint64_t>, 7> kTable2 = {{
    {"11", 282},
    {"10", 449},
    {"00", 448},
    {"01", 201},
    {"110", 206},
    {"100", 165},
    {"001", 165},
}};

const std::array<std::pair<int, uint64_t>, 19> kTable3 = {{
    {2, 1380},  {3, 1360},  {4, 1420},  {5, 1476},  {6, 1502},
    {7, 1542},  {8, 1561},  {9, 1555},  {10, 1567}, {11, 1576},
    {12, 1584}, {13, 1585}, {14, 1584}, {15, 1583}, {16, 1585},
    {17, 1581}, {18, 1580}, {19, 1579}, {20, 1578},
}};

const std::array<std::pair<int, uint64_t>, 19> kTable4 = {{
    {2, 1698},  {3, 1642},  {4, 1744},  {5, 1801},  {6, 1845},
    {7, 1871},  {8, 1908},  {9, 1927},  {10, 1946}, {11, 1957},
    {12, 1967}, {13, 1972}, {14, 1976}, {15, 1980}, {16, 1979},
    {17, 1981}, {18, 1981}, {19, 1979}, {20, 1978},
}};

uint64_t compare_sieve_limit(uint64_t center_hi) {
    // k=5 dominates k=1; full m-scan headroom at the largest center.
    return center_hi + 5 * (center_hi - 3) + 1;
}

namespace {

uint64_t pattern_count(const std::string& bits, const std::string& pattern) {
    return locate(bits, pattern).size();
}

} // namespace

std::string compare_table1(const PrimeSieve& sieve) {
    std::ostringstream out;
    const MSequence ms = m_sequence(sieve, 5, Range{6, 42});

    out << "ellipse table, k=5, centers 6..42 (published columns: 2n, 2n-m, "
           "2n+km, m, 4n+(k-1)m)\n";
    out << std::left << std::setw(8) << "two_n" << std::setw(22) << "computed"
        << std::setw(22) << "published" << "status\n";

    std::set<uint64_t> published_centers;
    size_t matched = 0;
    for (const auto& row : kTable1) {
        published_centers.insert(row.two_n);
        const auto it =
            std::find_if(ms.entries.begin(), ms.entries.end(),
                         [&](const EllipseEntry& e) { return e.two_n == row.two_n; });
        std::ostringstream comp, pub;
        pub << row.lower << "," << row.upper << "," << row.m << ","
            << row.span_sum;
        bool ok = false;
        if (it != ms.entries.end()) {
            comp << it->lower << "," << it->upper << "," << it->m << ","
                 << it->span_sum;
            ok = it->lower == row.lower && it->upper == row.upper &&
                 it->m == row.m && it->span_sum == row.span_sum;
        } else {
            comp << "(no ellipse)";
        }
        if (ok) ++matched;
        out << std::left << std::setw(8) << row.two_n << std::setw(22)
            << comp.str() << std::setw(22) << pub.str()
            << (ok ? "match" : "MISMATCH") << "\n";
    }

    size_t omissions = 0;
    for (const auto& e : ms.entries) {
        if (published_centers.count(e.two_n)) continue;
        ++omissions;
        out << std::left << std::setw(8) << e.two_n << std::setw(22)
            << (std::to_string(e.lower) + "," + std::to_string(e.upper) + "," +
                std::to_string(e.m) + "," + std::to_string(e.span_sum))
            << std::setw(22) << "(absent)"
            << "omitted from published table (documented omission, not a "
               "failure)\n";
    }

    out << "summary: " << matched << "/" << kTable1.size()
        << " published rows match; " << omissions
        << " computed entries absent from the published table\n";
    return out.str();
}

std::string compare_table2(const PrimeSieve& sieve, uint64_t center_hi) {
    std::ostringstream out;
    const BSequence b = to_b_sequence(m_sequence(sieve, 5, Range{6, center_hi}));
    const std::string bits = b.bits();

    out << "substring counts, k=5 b-sequence bits, centers 6.." << center_hi
        << " (length " << bits.size() << ")\n";
    out << std::left << std::setw(10) << "pattern" << std::setw(12) << "computed"
        << std::setw(12) << "published" << "status\n";
    for (const auto& [pattern, published] : kTable2) {
        const uint64_t computed = pattern_count(bits, pattern);
        out << std::left << std::setw(10) << pattern << std::setw(12) << computed
            << std::setw(12) << published
            << (computed == published ? "match" : "differs") << "\n";
    }

    const uint64_t c01 = pattern_count(bits, "01");
    const uint64_t c10 = pattern_count(bits, "10");
    out << "transition identity: computed |count(01)-count(10)| = "
        << (c01 > c10 ? c01 - c10 : c10 - c01)
        << " (any overlapping scan of one string keeps this <= 1)\n";
    out << "published values 449 (10) vs 201 (01) differ by 248, which no "
           "overlapping scan of a single binary string can produce; the "
           "published counting discipline is not recoverable, so these rows "
           "are reported, not reproduced\n";
    return out.str();
}

namespace {

std::string compare_length_table(
    const PrimeSieve& sieve, uint64_t k, uint64_t center_hi,
    const std::array<std::pair<int, uint64_t>, 19>& published) {
    std::ostringstream out;
    const BSequence b =
        to_b_sequence(m_sequence(sieve, k, Range{6, center_hi}));
    const std::string bits = b.bits();
    const UniqueWindowStats stats = unique_window_profile(bits, 2, 20);

    out << "per-length counts, k=" << k << ", centers 6.." << center_hi
        << " (length " << bits.size() << "), unique-window reading\n";
    out << "the published table never defines its count; the number of "
           "length-w windows occurring exactly once fits the large-w plateau "
           "and is what is computed here -- deltas are informational, no "
           "pass/fail is asserted\n";
    out << std::left << std::setw(6) << "w" << std::setw(12) << "computed"
        << std::setw(12) << "published" << "delta\n";
    for (size_t i = 0; i < published.size(); ++i) {
        const uint64_t computed = stats.counts[i];
        const int64_t delta = static_cast<int64_t>(computed) -
                              static_cast<int64_t>(published[i].second);
        out << std::left << std::setw(6) << published[i].first << std::setw(12)
            << computed << std::setw(12) << published[i].second << delta << "\n";
    }
    return out.str();
}

} // namespace

std::string compare_table3(const PrimeSieve& sieve, uint64_t center_hi) {
    return compare_length_table(sieve, 5, center_hi, kTable3);
}

std::string compare_table4(const PrimeSieve& sieve, uint64_t center_hi) {
    return compare_length_table(sieve, 1, center_hi, kTable4);
}

std::string compare_all_tables(const PrimeSieve& sieve, uint64_t center_hi) {
    std::string out = compare_table1(sieve);
    out += "\n" + compare_table2(sieve, center_hi);
    out += "\n" + compare_table3(sieve, center_hi);
    out += "\n" + compare_table4(sieve, center_hi);
    return out;
}

} // namespace gbx
