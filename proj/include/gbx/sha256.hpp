// sha256.hpp
// FIPS 180-4 SHA-256. Self-contained so the masking hash is bit-exact on
// every platform; verified against the standard test vectors.

#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <span>
#include <string>

namespace gbx {

class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(std::span<const uint8_t> data);
    std::array<uint8_t, 32> finish();

private:
    void compress(const uint8_t* block);

    std::array<uint32_t, 8> state_{};
    std::array<uint8_t, 64> buffer_{};
    uint64_t total_len_ = 0;   // bytes fed so far
    size_t buffer_len_ = 0;
};

std::array<uint8_t, 32> sha256(std::span<const uint8_t> data);

std::string hex(std::span<const uint8_t> bytes);

} // namespace gbx
