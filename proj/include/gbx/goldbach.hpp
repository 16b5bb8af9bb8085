// goldbach.hpp
// Goldbach partitions, circle sequences of a radius, (1,k) ellipse
// m-sequences, the +-1 b-sequence mapping and the partition-parity
// sequence.
//
// Conventions:
//   - Partitions are unordered with p <= q; p = q is allowed and 2 may
//     appear (needed for n = 4, impossible for larger even n).
//   - An ellipse at even center 2n for odd k is the MINIMAL odd m >= 1
//     with both 2n - m and 2n + k*m prime; m is searched up to 2n - 3 so
//     the lower prime stays >= 3.
//   - Ranges are inclusive on even bounds.
//
// All operations are pure given a sieve and safe for concurrent use; the
// range kernels are OpenMP-parallel with deterministic output (each
// center fills its own slot, compaction is serial).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbx/primes.hpp"

namespace gbx {

// Inclusive range of even numbers.
struct Range {
    uint64_t lo;
    uint64_t hi;
};

// One Goldbach partition of n: p + q = n, both prime, p <= q.
struct Partition {
    uint64_t n;
    uint64_t p;
    uint64_t q;

    bool operator==(const Partition&) const = default;
};

// One row of the (1,k) ellipse table for center two_n:
//   lower = two_n - m,  upper = two_n + k*m,  both prime,
//   span_sum = lower + upper = 2*two_n + (k-1)*m.
struct EllipseEntry {
    uint64_t two_n;
    uint64_t k;
    uint64_t m;
    uint64_t lower;
    uint64_t upper;
    uint64_t span_sum;

    bool operator==(const EllipseEntry&) const = default;
};

// Circle hit: both two_n - r and two_n + r prime.
struct CircleEntry {
    uint64_t two_n;
    uint64_t lower;
    uint64_t upper;

    bool operator==(const CircleEntry&) const = default;
};

// Ordered ellipse entries for a fixed k over a center range; centers with
// no ellipse are omitted.
struct MSequence {
    uint64_t k = 0;
    uint64_t range_start = 0;
    uint64_t range_end = 0;
    std::vector<EllipseEntry> entries;

    size_t size() const { return entries.size(); }
};

// +-1 symbol sequence. Symbols come either from an m-sequence via
// m mod 4 (1 -> +1, 3 -> -1) or from partition parity (odd count -> +1).
// Bit view: +1 <-> '1', -1 <-> '0'.
class BSequence {
public:
    BSequence() = default;
    BSequence(std::vector<int8_t> symbols, std::string origin)
        : symbols_(std::move(symbols)), origin_(std::move(origin)) {}

    const std::vector<int8_t>& symbols() const { return symbols_; }
    const std::string& origin() const { return origin_; }
    size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }

    // '1' for +1, '0' for -1.
    std::string bits() const;

private:
    std::vector<int8_t> symbols_;
    std::string origin_;
};

// All partitions of even n >= 4, ascending by p.
// Throws std::invalid_argument (n odd or < 4), std::out_of_range (n > limit).
std::vector<Partition> partitions(const PrimeSieve& sieve, uint64_t n);

uint64_t partition_count(const PrimeSieve& sieve, uint64_t n);

// One symbol per even n = 4, 6, ..., n_max: +1 if partition_count(n) is
// odd, -1 if even. Bit view is the working string of the substring
// analysis.
BSequence parity_sequence(const PrimeSieve& sieve, uint64_t n_max);

// Centers two_n in range with both two_n - r and two_n + r prime.
std::vector<CircleEntry> circle_with_radius(const PrimeSieve& sieve,
                                            uint64_t radius, Range range);

// Minimal-odd-m ellipse at a single center, or nullopt when no odd
// m <= two_n - 3 qualifies (for k > 1 this is forced whenever k divides
// two_n: then two_n + k*m is a multiple of k larger than k).
// Requires search headroom two_n + k*(two_n - 3) <= sieve.limit().
std::optional<EllipseEntry> ellipse_m(const PrimeSieve& sieve,
                                      uint64_t two_n, uint64_t k);

// Ellipse entries for every even center in range, ascending.
MSequence m_sequence(const PrimeSieve& sieve, uint64_t k, Range range);

// m mod 4 == 1 -> +1, m mod 4 == 3 -> -1, one symbol per entry.
BSequence to_b_sequence(const MSequence& ms);

} // namespace gbx
