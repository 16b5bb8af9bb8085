// primes.cpp
// Sieve of Eratosthenes over the odd numbers, bit-packed.

#include "gbx/primes.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace gbx {

PrimeSieve::PrimeSieve(uint64_t limit)
    : limit_(limit)
    , words_((num_bits(limit) + 63) / 64, ~0ULL) {
    if (limit < 2)
        throw std::invalid_argument("build_sieve: limit must be >= 2, got " +
                                    std::to_string(limit));

    // Clear tail bits beyond the last odd number so count() can popcount
    // whole words.
    const uint64_t bits = num_bits(limit);
    if (bits % 64 != 0 && !words_.empty())
        words_.back() &= (1ULL << (bits % 64)) - 1;

    for (uint64_t i = 3; i * i <= limit; i += 2) {
        if (!test_odd(i)) continue;
        for (uint64_t j = i * i; j <= limit; j += 2 * i)
            clear_odd(j);
    }
}

bool PrimeSieve::is_prime(uint64_t n) const {
    if (n > limit_)
        throw std::out_of_range("is_prime: " + std::to_string(n) +
                                " exceeds sieve limit " + std::to_string(limit_));
    if (n < 2) return false;
    if (n == 2) return true;
    if (n % 2 == 0) return false;
    return test_odd(n);
}

uint64_t PrimeSieve::count() const {
    uint64_t c = 1;  // the prime 2
    for (uint64_t w : words_)
        c += static_cast<uint64_t>(std::popcount(w));
    return c;
}

std::vector<uint64_t> PrimeSieve::primes() const {
    std::vector<uint64_t> out;
    out.reserve(count());
    out.push_back(2);
    for (uint64_t n = 3; n <= limit_; n += 2)
        if (test_odd(n)) out.push_back(n);
    return out;
}

} // namespace gbx
