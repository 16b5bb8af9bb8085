// test_primes.cpp
// Sieve vs the trial-division oracle, plus the documented error paths.

#include <doctest.h>

#include <stdexcept>

#include "gbx/primes.hpp"
#include "gbx/serial.hpp"

using namespace gbx;

TEST_CASE("sieve of 10 finds exactly 2, 3, 5, 7") {
    const PrimeSieve sieve(10);
    std::vector<uint64_t> primes_found;
    for (uint64_t n = 0; n <= 10; ++n)
        if (sieve.is_prime(n)) primes_found.push_back(n);
    CHECK(primes_found == std::vector<uint64_t>{2, 3, 5, 7});
    CHECK(sieve.count() == 4);
}

TEST_CASE("hand-checkable members at limit 40") {
    const PrimeSieve sieve(40);
    CHECK(sieve.is_prime(37));
    CHECK_FALSE(sieve.is_prime(39));
    CHECK_FALSE(sieve.is_prime(0));
    CHECK_FALSE(sieve.is_prime(1));
    CHECK(sieve.is_prime(2));
}

TEST_CASE("prime count to 2000 equals the trial-division oracle") {
    const PrimeSieve sieve(2000);
    uint64_t oracle = 0;
    for (uint64_t n = 0; n <= 2000; ++n)
        if (serial::is_prime(n)) ++oracle;
    CHECK(sieve.count() == oracle);
}

TEST_CASE("membership agrees with trial division for every n <= 10000") {
    const PrimeSieve sieve(10000);
    for (uint64_t n = 0; n <= 10000; ++n)
        REQUIRE(sieve.is_prime(n) == serial::is_prime(n));
}

TEST_CASE("queries above the limit are errors, not answers") {
    const PrimeSieve sieve(100);
    CHECK(sieve.is_prime(2));
    CHECK_FALSE(sieve.is_prime(91));   // 7 * 13
    CHECK_THROWS_AS((void)sieve.is_prime(101), std::out_of_range);
}

TEST_CASE("limit below 2 is rejected") {
    CHECK_THROWS_AS(PrimeSieve(1), std::invalid_argument);
    CHECK_THROWS_AS(PrimeSieve(0), std::invalid_argument);
}

TEST_CASE("rebuilding with a larger limit preserves all previous answers") {
    const PrimeSieve small(500);
    const PrimeSieve large(5000);
    for (uint64_t n = 0; n <= 500; ++n)
        REQUIRE(small.is_prime(n) == large.is_prime(n));
}

TEST_CASE("primes list is ascending and consistent with count") {
    const PrimeSieve sieve(3000);
    const auto list = sieve.primes();
    CHECK(list.size() == sieve.count());
    for (size_t i = 1; i < list.size(); ++i) REQUIRE(list[i - 1] < list[i]);
}
