// serial.cpp

#include "gbx/serial.hpp"

#include <stdexcept>

namespace gbx::serial {

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<Partition> partitions(uint64_t n) {
    std::vector<Partition> out;
    for (uint64_t p = 2; p <= n / 2; ++p)
        if (is_prime(p) && is_prime(n - p))
            out.push_back({n, p, n - p});
    return out;
}

uint64_t partition_count(uint64_t n) {
    return partitions(n).size();
}

std::string parity_bits(uint64_t n_max) {
    std::string out;
    for (uint64_t n = 4; n <= n_max; n += 2)
        out.push_back(partition_count(n) % 2 == 1 ? '1' : '0');
    return out;
}

std::vector<CircleEntry> circle_with_radius(uint64_t radius, Range range) {
    std::vector<CircleEntry> out;
    for (uint64_t two_n = range.lo; two_n <= range.hi; two_n += 2)
        if (two_n > radius && is_prime(two_n - radius) &&
            is_prime(two_n + radius))
            out.push_back({two_n, two_n - radius, two_n + radius});
    return out;
}

std::optional<uint64_t> min_odd_m(uint64_t two_n, uint64_t k) {
    for (uint64_t m = 1; m + 3 <= two_n; m += 2)
        if (is_prime(two_n - m) && is_prime(two_n + k * m))
            return m;
    return std::nullopt;
}

MSequence m_sequence(uint64_t k, Range range) {
    MSequence ms;
    ms.k = k;
    ms.range_start = range.lo;
    ms.range_end = range.hi;
    for (uint64_t two_n = range.lo; two_n <= range.hi; two_n += 2)
        if (auto m = min_odd_m(two_n, k))
            ms.entries.push_back({two_n, k, *m, two_n - *m, two_n + k * *m,
                                  2 * two_n + (k - 1) * *m});
    return ms;
}

double autocorrelation_at(const std::vector<int8_t>& symbols, size_t lag,
                          bool circular) {
    const size_t n = symbols.size();
    long long sum = 0;
    if (circular) {
        for (size_t m = 0; m < n; ++m)
            sum += static_cast<long long>(symbols[m]) * symbols[(m + lag) % n];
        return static_cast<double>(sum) / static_cast<double>(n);
    }
    for (size_t m = 0; m + lag < n; ++m)
        sum += static_cast<long long>(symbols[m]) * symbols[m + lag];
    return static_cast<double>(sum) / static_cast<double>(n - lag);
}

uint64_t count_pattern(std::string_view bits, std::string_view pattern) {
    if (pattern.empty() || pattern.size() > bits.size()) return 0;
    uint64_t c = 0;
    for (size_t i = 0; i + pattern.size() <= bits.size(); ++i)
        if (bits.substr(i, pattern.size()) == pattern) ++c;
    return c;
}

uint64_t unique_window_count(std::string_view bits, size_t w) {
    if (w < 1 || w > bits.size())
        throw std::invalid_argument("unique_window_count: bad window length");
    uint64_t unique = 0;
    for (size_t i = 0; i + w <= bits.size(); ++i)
        if (count_pattern(bits, bits.substr(i, w)) == 1) ++unique;
    return unique;
}

std::vector<size_t> locate(std::string_view bits, std::string_view pattern) {
    std::vector<size_t> out;
    if (pattern.empty() || pattern.size() > bits.size()) return out;
    for (size_t i = 0; i + pattern.size() <= bits.size(); ++i)
        if (bits.substr(i, pattern.size()) == pattern) out.push_back(i);
    return out;
}

std::vector<uint8_t> d_sequence_longdiv(uint64_t p, size_t n_bits) {
    if (p < 3 || p % 2 == 0)
        throw std::invalid_argument("d_sequence_longdiv: p must be odd and >= 3");
    std::vector<uint8_t> bits;
    bits.reserve(n_bits);
    uint64_t r = 1;
    for (size_t i = 0; i < n_bits; ++i) {
        r *= 2;
        if (r >= p) {
            bits.push_back(1);
            r -= p;
        } else {
            bits.push_back(0);
        }
    }
    return bits;
}

} // namespace gbx::serial
