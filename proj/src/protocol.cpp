// protocol.cpp

#include "gbx/protocol.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "gbx/errors.hpp"
#include "gbx/goldbach.hpp"
#include "gbx/sha256.hpp"

namespace gbx {

std::vector<uint8_t> encode_int(uint64_t x, size_t width) {
    if (width < 1)
        throw std::invalid_argument("encode_int: width must be >= 1");
    if (width < 8 && (x >> (8 * width)) != 0)
        throw std::invalid_argument("encode_int: " + std::to_string(x) +
                                    " does not fit in " + std::to_string(width) +
                                    " bytes");
    std::vector<uint8_t> out(width, 0);
    for (size_t i = 0; i < std::min<size_t>(width, 8); ++i)
        out[width - 1 - i] = static_cast<uint8_t>(x >> (8 * i));
    return out;
}

uint64_t decode_int(std::span<const uint8_t> bytes) {
    uint64_t v = 0;
    for (size_t i = 0; i < bytes.size(); ++i) {
        if (bytes.size() > 8 && i < bytes.size() - 8 && bytes[i] != 0)
            throw std::invalid_argument("decode_int: value exceeds 64 bits");
        if (i >= bytes.size() - std::min<size_t>(bytes.size(), 8))
            v = (v << 8) | bytes[i];
    }
    return v;
}

std::vector<uint8_t> hash_mask(uint64_t secret, size_t width) {
    return hash_mask(secret, std::span<const uint8_t>{}, width);
}

std::vector<uint8_t> hash_mask(uint64_t secret,
                               std::span<const uint8_t> nonce, size_t width) {
    if (secret < 2)
        throw std::invalid_argument("hash_mask: secret must be >= 2");
    if (width < 1 || width > 32)
        throw std::invalid_argument("hash_mask: width must be in [1, 32]");
    Sha256 h;
    const auto enc = encode_int(secret, 8);
    h.update(enc);
    if (!nonce.empty()) h.update(nonce);
    const auto digest = h.finish();
    return std::vector<uint8_t>(digest.begin(), digest.begin() + width);
}

MaskedKey mask(uint64_t p, std::span<const uint8_t> key_material) {
    auto bytes = encode_int(p, key_material.size());
    for (size_t i = 0; i < bytes.size(); ++i) bytes[i] ^= key_material[i];
    return MaskedKey{std::move(bytes)};
}

uint64_t unmask(const MaskedKey& mk, std::span<const uint8_t> key_material) {
    if (mk.bytes.size() != key_material.size())
        throw std::invalid_argument("unmask: key material length " +
                                    std::to_string(key_material.size()) +
                                    " != masked width " +
                                    std::to_string(mk.bytes.size()));
    std::vector<uint8_t> bytes = mk.bytes;
    for (size_t i = 0; i < bytes.size(); ++i) bytes[i] ^= key_material[i];
    return decode_int(bytes);
}

std::pair<uint64_t, uint64_t> choose_session_partition(const PrimeSieve& sieve,
                                                       uint64_t a, uint64_t b,
                                                       std::mt19937_64& rng) {
    if (a < 3 || b < 3 || a % 2 == 0 || b % 2 == 0 || !sieve.is_prime(a) ||
        !sieve.is_prime(b))
        throw std::invalid_argument("choose_session_partition: secrets must be "
                                    "odd primes");
    const uint64_t n = a + b;
    auto parts = partitions(sieve, n);

    const uint64_t own_p = std::min(a, b);
    std::erase_if(parts, [&](const Partition& part) { return part.p == own_p; });
    if (parts.empty())
        throw NoAlternativePartition("no Goldbach partition of " +
                                     std::to_string(n) + " other than {" +
                                     std::to_string(a) + "," +
                                     std::to_string(b) + "}");

    const auto& pick = parts[rng() % parts.size()];
    return {pick.p, pick.q};
}

std::pair<uint64_t, uint64_t> choose_session_partition(const PrimeSieve& sieve,
                                                       uint64_t a, uint64_t b,
                                                       uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    return choose_session_partition(sieve, a, b, rng);
}

DSequence::DSequence(uint64_t p, size_t n_bits) : p_(p) {
    if (p < 3 || p % 2 == 0)
        throw std::invalid_argument("d_sequence: p must be an odd prime >= 3, got " +
                                    std::to_string(p));
    bits_.reserve(n_bits);
    uint64_t r = 1;
    for (size_t i = 0; i < n_bits; ++i) {
        r = (r * 2) % p;            // r = 2^(i+1) mod p
        bits_.push_back(static_cast<uint8_t>(r & 1));
    }
}

uint64_t DSequence::period() const {
    uint64_t r = 2 % p_;
    uint64_t t = 1;
    while (r != 1) {
        r = (r * 2) % p_;
        ++t;
    }
    return t;
}

std::vector<uint8_t> keystream_bytes(const DSequence& ds, size_t n_bytes,
                                     size_t bit_offset) {
    if (bit_offset + 8 * n_bytes > ds.size())
        throw std::invalid_argument("keystream exhausted: need " +
                                    std::to_string(bit_offset + 8 * n_bytes) +
                                    " bits, have " + std::to_string(ds.size()));
    std::vector<uint8_t> out(n_bytes, 0);
    const auto& bits = ds.bits();
    for (size_t j = 0; j < 8 * n_bytes; ++j)
        out[j / 8] |= static_cast<uint8_t>(bits[bit_offset + j] << (7 - j % 8));
    return out;
}

std::vector<uint8_t> keystream_xor(std::span<const uint8_t> payload,
                                   const DSequence& ds, size_t bit_offset) {
    auto ks = keystream_bytes(ds, payload.size(), bit_offset);
    for (size_t i = 0; i < ks.size(); ++i) ks[i] ^= payload[i];
    return ks;
}

} // namespace gbx
