// goldbach.cpp
// Sequence kernels. The per-center loops are embarrassingly parallel:
// every center writes its own pre-sized slot and the surviving entries
// are compacted serially, so output is identical with and without OpenMP.

#include "gbx/goldbach.hpp"

#include <stdexcept>
#include <string>

namespace gbx {

namespace {

void require_even(uint64_t v, const char* what) {
    if (v % 2 != 0)
        throw std::invalid_argument(std::string(what) + " must be even, got " +
                                    std::to_string(v));
}

void require_range(Range r) {
    require_even(r.lo, "range.lo");
    require_even(r.hi, "range.hi");
    if (r.lo > r.hi)
        throw std::invalid_argument("range.lo " + std::to_string(r.lo) +
                                    " exceeds range.hi " + std::to_string(r.hi));
}

void require_odd_k(uint64_t k) {
    if (k < 1 || k % 2 == 0)
        throw std::invalid_argument("k must be odd and >= 1, got " +
                                    std::to_string(k));
}

} // namespace

std::string BSequence::bits() const {
    std::string out(symbols_.size(), '0');
    for (size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i] > 0) out[i] = '1';
    return out;
}

std::vector<Partition> partitions(const PrimeSieve& sieve, uint64_t n) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("partitions: n must be even and >= 4, got " +
                                    std::to_string(n));
    if (n > sieve.limit())
        throw std::out_of_range("partitions: n " + std::to_string(n) +
                                " exceeds sieve limit " +
                                std::to_string(sieve.limit()));
    std::vector<Partition> out;
    for (uint64_t p = 2; p <= n / 2; ++p)
        if (sieve.is_prime(p) && sieve.is_prime(n - p))
            out.push_back({n, p, n - p});
    return out;
}

uint64_t partition_count(const PrimeSieve& sieve, uint64_t n) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("partition_count: n must be even and >= 4, got " +
                                    std::to_string(n));
    if (n > sieve.limit())
        throw std::out_of_range("partition_count: n " + std::to_string(n) +
                                " exceeds sieve limit " +
                                std::to_string(sieve.limit()));
    // 2 pairs only with n - 2, which is even; so for n > 4 both members
    // are odd primes.
    if (n == 4) return 1;
    uint64_t c = 0;
    for (uint64_t p = 3; p <= n / 2; p += 2)
        if (sieve.is_prime(p) && sieve.is_prime(n - p))
            ++c;
    return c;
}

BSequence parity_sequence(const PrimeSieve& sieve, uint64_t n_max) {
    if (n_max < 4)
        throw std::invalid_argument("parity_sequence: n_max must be >= 4, got " +
                                    std::to_string(n_max));
    if (n_max > sieve.limit())
        throw std::out_of_range("parity_sequence: n_max " + std::to_string(n_max) +
                                " exceeds sieve limit " +
                                std::to_string(sieve.limit()));
    const uint64_t count = (n_max - 4) / 2 + 1;
    std::vector<int8_t> symbols(count, 0);

    #pragma omp parallel for schedule(dynamic, 64)
    for (int64_t i = 0; i < static_cast<int64_t>(count); ++i) {
        const uint64_t n = 4 + 2 * static_cast<uint64_t>(i);
        symbols[i] = (partition_count(sieve, n) % 2 == 1) ? int8_t{1} : int8_t{-1};
    }
    return BSequence(std::move(symbols),
                     "parity n<=" + std::to_string(n_max));
}

std::vector<CircleEntry> circle_with_radius(const PrimeSieve& sieve,
                                            uint64_t radius, Range range) {
    if (radius < 1)
        throw std::invalid_argument("circle_with_radius: radius must be >= 1");
    require_range(range);
    if (range.hi + radius > sieve.limit())
        throw std::out_of_range("circle_with_radius: need sieve limit >= " +
                                std::to_string(range.hi + radius) + ", have " +
                                std::to_string(sieve.limit()));

    const uint64_t count = (range.hi - range.lo) / 2 + 1;
    std::vector<uint8_t> hit(count, 0);

    #pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < static_cast<int64_t>(count); ++i) {
        const uint64_t two_n = range.lo + 2 * static_cast<uint64_t>(i);
        if (two_n > radius && sieve.is_prime(two_n - radius) &&
            sieve.is_prime(two_n + radius))
            hit[i] = 1;
    }

    std::vector<CircleEntry> out;
    for (uint64_t i = 0; i < count; ++i)
        if (hit[i]) {
            const uint64_t two_n = range.lo + 2 * i;
            out.push_back({two_n, two_n - radius, two_n + radius});
        }
    return out;
}

std::optional<EllipseEntry> ellipse_m(const PrimeSieve& sieve,
                                      uint64_t two_n, uint64_t k) {
    require_odd_k(k);
    if (two_n < 6 || two_n % 2 != 0)
        throw std::invalid_argument("ellipse_m: center must be even and >= 6, got " +
                                    std::to_string(two_n));
    // Worst-case upper prime for the full m scan must be answerable.
    if (two_n + k * (two_n - 3) > sieve.limit())
        throw std::out_of_range("ellipse_m: need sieve limit >= " +
                                std::to_string(two_n + k * (two_n - 3)) +
                                ", have " + std::to_string(sieve.limit()));

    for (uint64_t m = 1; m <= two_n - 3; m += 2)
        if (sieve.is_prime(two_n - m) && sieve.is_prime(two_n + k * m))
            return EllipseEntry{two_n, k, m, two_n - m, two_n + k * m,
                                2 * two_n + (k - 1) * m};
    return std::nullopt;
}

MSequence m_sequence(const PrimeSieve& sieve, uint64_t k, Range range) {
    require_odd_k(k);
    require_range(range);
    if (range.lo < 6)
        throw std::invalid_argument("m_sequence: range must start at >= 6");
    if (range.hi + k * (range.hi - 3) > sieve.limit())
        throw std::out_of_range("m_sequence: need sieve limit >= " +
                                std::to_string(range.hi + k * (range.hi - 3)) +
                                ", have " + std::to_string(sieve.limit()));

    const uint64_t count = (range.hi - range.lo) / 2 + 1;
    std::vector<std::optional<EllipseEntry>> slots(count);

    #pragma omp parallel for schedule(dynamic, 64)
    for (int64_t i = 0; i < static_cast<int64_t>(count); ++i) {
        const uint64_t two_n = range.lo + 2 * static_cast<uint64_t>(i);
        slots[i] = ellipse_m(sieve, two_n, k);
    }

    MSequence ms;
    ms.k = k;
    ms.range_start = range.lo;
    ms.range_end = range.hi;
    for (auto& s : slots)
        if (s) ms.entries.push_back(*s);
    return ms;
}

BSequence to_b_sequence(const MSequence& ms) {
    std::vector<int8_t> symbols;
    symbols.reserve(ms.entries.size());
    for (const auto& e : ms.entries)
        symbols.push_back(e.m % 4 == 1 ? int8_t{1} : int8_t{-1});
    return BSequence(std::move(symbols),
                     "mseq k=" + std::to_string(ms.k) + " [" +
                         std::to_string(ms.range_start) + "," +
                         std::to_string(ms.range_end) + "]");
}

} // namespace gbx
