// serial.hpp
// Serial reference implementations, kept deliberately independent of the
// sieve-backed kernels: primality is trial division, autocorrelation is
// the direct summation, substring statistics walk the string position by
// position, and the d-sequence comes from base-2 long division of 1/p.
//
// The unit and acceptance suites use these as oracles; gbx_bench compares
// them against the OpenMP kernels.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gbx/goldbach.hpp"

namespace gbx::serial {

// Trial division.
bool is_prime(uint64_t n);

std::vector<Partition> partitions(uint64_t n);
uint64_t partition_count(uint64_t n);

// Parity bit string for even n = 4..n_max ('1' = odd partition count).
std::string parity_bits(uint64_t n_max);

std::vector<CircleEntry> circle_with_radius(uint64_t radius, Range range);

// Minimal odd m with two_n - m and two_n + k*m prime, or nullopt.
std::optional<uint64_t> min_odd_m(uint64_t two_n, uint64_t k);

MSequence m_sequence(uint64_t k, Range range);

// Direct-summation autocorrelation of a +-1 sequence at one lag.
double autocorrelation_at(const std::vector<int8_t>& symbols, size_t lag,
                          bool circular);

// Naive overlapping substring scan.
uint64_t count_pattern(std::string_view bits, std::string_view pattern);
uint64_t unique_window_count(std::string_view bits, size_t w);
std::vector<size_t> locate(std::string_view bits, std::string_view pattern);

// First n_bits binary digits of 1/p by long division (p odd >= 3).
std::vector<uint8_t> d_sequence_longdiv(uint64_t p, size_t n_bits);

} // namespace gbx::serial
