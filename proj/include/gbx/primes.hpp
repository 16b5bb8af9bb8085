// primes.hpp
// Queryable primality table up to a build-time limit.
// Stores 1 bit per odd number; 2 is handled as a special case and all
// other even numbers are composite.
//
// Encoding:
//   bit index i  ->  odd number (2*i + 3)
//   odd number n ->  bit index  (n - 3) / 2
//
// The sieve is the single primality authority for the sequence modules:
// queries above the limit are errors, never silent trial division, so a
// misread range surfaces loudly instead of producing a wrong table.

#pragma once

#include <cstdint>
#include <vector>

namespace gbx {

class PrimeSieve {
public:
    // Build a sieve answering is_prime for all n in [0, limit].
    // Throws std::invalid_argument if limit < 2.
    explicit PrimeSieve(uint64_t limit);

    // True iff n is prime. Throws std::out_of_range if n > limit().
    bool is_prime(uint64_t n) const;

    uint64_t limit() const { return limit_; }

    // Number of primes <= limit.
    uint64_t count() const;

    // Ascending list of all primes <= limit.
    std::vector<uint64_t> primes() const;

private:
    uint64_t limit_;
    std::vector<uint64_t> words_;   // 1 bit per odd number in [3, limit]

    static uint64_t num_bits(uint64_t limit) {
        return limit < 3 ? 0 : (limit - 3) / 2 + 1;
    }
    bool test_odd(uint64_t n) const {
        const uint64_t i = (n - 3) / 2;
        return (words_[i / 64] >> (i % 64)) & 1ULL;
    }
    void clear_odd(uint64_t n) {
        const uint64_t i = (n - 3) / 2;
        words_[i / 64] &= ~(1ULL << (i % 64));
    }
};

// Free-function spelling of the constructor; reads better at call sites
// that pass the sieve on immediately.
inline PrimeSieve build_sieve(uint64_t limit) { return PrimeSieve(limit); }

} // namespace gbx
