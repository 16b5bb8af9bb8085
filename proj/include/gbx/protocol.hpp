// protocol.hpp
// Session-key primitives: canonical integer encoding, the XOR masking
// hash h(.), alternative-partition selection, and the d-sequence
// keystream (binary expansion of 1/p).
//
// Fixed choices, required for interoperability:
//   - h(secret)          = SHA-256(encode_int(secret, 8)), truncated.
//   - h(secret || nonce) = SHA-256(encode_int(secret, 8) || nonce),
//     the optional replay-hardened form.
//   - Session keys travel as 8-byte big-endian integers by default.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "gbx/primes.hpp"

namespace gbx {

// Default width of masked key material on the wire.
inline constexpr size_t kKeyWidth = 8;

// Plausibility bound used by parties when validating a recovered session
// key: CA-brokered keys are desk-scale primes, so anything above this is
// a wrong secret or a tampered share.
inline constexpr uint64_t kMaxSessionKey = 1ULL << 24;

// Big-endian, zero-padded to width. Throws std::invalid_argument when x
// does not fit.
std::vector<uint8_t> encode_int(uint64_t x, size_t width);

// Inverse of encode_int; accepts any length whose value fits 64 bits.
uint64_t decode_int(std::span<const uint8_t> bytes);

// h(secret), truncated to width bytes (1 <= width <= 32, secret >= 2).
std::vector<uint8_t> hash_mask(uint64_t secret, size_t width);

// Replay-hardened form: h(secret || nonce).
std::vector<uint8_t> hash_mask(uint64_t secret,
                               std::span<const uint8_t> nonce, size_t width);

// Byte string of fixed protocol width carrying p XOR key_material.
struct MaskedKey {
    std::vector<uint8_t> bytes;

    size_t width() const { return bytes.size(); }
    bool operator==(const MaskedKey&) const = default;
};

MaskedKey mask(uint64_t p, std::span<const uint8_t> key_material);
uint64_t unmask(const MaskedKey& mk, std::span<const uint8_t> key_material);

// Picks a Goldbach partition (p, q) of n = a + b with {p, q} != {a, b},
// p <= q, uniformly under the supplied engine. Throws
// NoAlternativePartition when n has no other partition. Note the rule
// excludes only the unordered pair: p may coincide with a or b alone when
// partitions share an element.
std::pair<uint64_t, uint64_t> choose_session_partition(const PrimeSieve& sieve,
                                                       uint64_t a, uint64_t b,
                                                       std::mt19937_64& rng);

std::pair<uint64_t, uint64_t> choose_session_partition(const PrimeSieve& sieve,
                                                       uint64_t a, uint64_t b,
                                                       uint64_t rng_seed);

// Keystream bits of 1/p in base 2: bit_i = (2^i mod p) mod 2 for i >= 1.
// Eventually periodic with period dividing the multiplicative order of 2
// modulo p.
class DSequence {
public:
    // Throws std::invalid_argument if p is even or < 3.
    DSequence(uint64_t p, size_t n_bits);

    uint64_t p() const { return p_; }
    size_t size() const { return bits_.size(); }

    // bits()[j] is bit_(j+1) of the expansion.
    const std::vector<uint8_t>& bits() const { return bits_; }

    // Multiplicative order of 2 modulo p (brute force; p is desk-scale).
    uint64_t period() const;

private:
    uint64_t p_;
    std::vector<uint8_t> bits_;
};

// Keystream bits packed MSB-first into bytes, starting at bit_offset.
// Throws std::invalid_argument when the d-sequence is too short; the
// caller regenerates with more bits.
std::vector<uint8_t> keystream_bytes(const DSequence& ds, size_t n_bytes,
                                     size_t bit_offset = 0);

// Bitwise XOR of payload with the keystream; involutive.
std::vector<uint8_t> keystream_xor(std::span<const uint8_t> payload,
                                   const DSequence& ds, size_t bit_offset = 0);

} // namespace gbx
