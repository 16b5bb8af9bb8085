// bench.cpp
// Wall-clock comparison of the OpenMP kernels against the serial
// reference implementations, with a result-equality check per kernel.
//
//   ./gbx_bench [--centers N] [--lags L]

#include <chrono>
#include <cstdint>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gbx/analysis.hpp"
#include "gbx/goldbach.hpp"
#include "gbx/primes.hpp"
#include "gbx/serial.hpp"

using namespace gbx;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

void row(const std::string& name, double serial_ms, double parallel_ms,
         bool equal) {
    std::cout << std::left << std::setw(28) << name << std::right
              << std::setw(12) << std::fixed << std::setprecision(1)
              << serial_ms << std::setw(12) << parallel_ms << std::setw(10)
              << std::setprecision(2) << serial_ms / parallel_ms
              << (equal ? "      ok" : "      RESULTS DIFFER") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    uint64_t centers = 60000;
    size_t lags = 2000;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (std::strcmp(argv[i], "--centers") == 0)
            centers = std::stoull(argv[i + 1]);
        else if (std::strcmp(argv[i], "--lags") == 0)
            lags = std::stoull(argv[i + 1]);
    }
    centers -= centers % 2;

#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (built without OpenMP)\n";
#endif
    std::cout << "centers: " << centers << ", lags: " << lags << "\n\n";
    std::cout << std::left << std::setw(28) << "kernel" << std::right
              << std::setw(12) << "serial ms" << std::setw(12) << "omp ms"
              << std::setw(10) << "speedup" << "\n";

    const PrimeSieve sieve(centers + 5 * (centers - 3) + 1);

    // m-sequence scan, k=5.
    auto t0 = Clock::now();
    const MSequence serial_ms_seq = serial::m_sequence(5, Range{6, centers});
    const double t_serial_mseq = ms_since(t0);

    t0 = Clock::now();
    const MSequence par_ms_seq = m_sequence(sieve, 5, Range{6, centers});
    const double t_par_mseq = ms_since(t0);
    row("m-sequence k=5", t_serial_mseq, t_par_mseq,
        serial_ms_seq.entries == par_ms_seq.entries);

    // Autocorrelation over lags.
    const BSequence b = to_b_sequence(par_ms_seq);
    const size_t max_lag = std::min(lags, b.size() - 1);

    t0 = Clock::now();
    std::vector<double> serial_corr(max_lag + 1);
    for (size_t lag = 0; lag <= max_lag; ++lag)
        serial_corr[lag] = serial::autocorrelation_at(b.symbols(), lag, true);
    const double t_serial_corr = ms_since(t0);

    t0 = Clock::now();
    const auto par_corr = autocorrelation(b, max_lag, CorrMode::circular);
    const double t_par_corr = ms_since(t0);
    bool corr_equal = true;
    for (size_t lag = 0; lag <= max_lag; ++lag)
        if (std::abs(par_corr.values[lag] - serial_corr[lag]) > 1e-12)
            corr_equal = false;
    row("autocorrelation", t_serial_corr, t_par_corr, corr_equal);

    // Parity sequence (quadratic partition counting).
    const uint64_t parity_max = std::min<uint64_t>(centers / 8, 8000);
    t0 = Clock::now();
    const std::string serial_parity = serial::parity_bits(parity_max);
    const double t_serial_parity = ms_since(t0);

    const PrimeSieve parity_sieve(parity_max);
    t0 = Clock::now();
    const std::string par_parity =
        parity_sequence(parity_sieve, parity_max).bits();
    const double t_par_parity = ms_since(t0);
    row("parity bits n<=" + std::to_string(parity_max), t_serial_parity,
        t_par_parity, serial_parity == par_parity);

    // Unique-window profile. The serial scan is quadratic in the string
    // length, so benchmark on a prefix.
    const std::string bits = b.bits().substr(0, 3000);
    const size_t w_hi = 16;
    t0 = Clock::now();
    std::vector<uint64_t> serial_unique;
    for (size_t w = 8; w <= w_hi; ++w)
        serial_unique.push_back(serial::unique_window_count(bits, w));
    const double t_serial_windows = ms_since(t0);

    t0 = Clock::now();
    const auto par_unique = unique_window_profile(bits, 8, w_hi);
    const double t_par_windows = ms_since(t0);
    row("unique windows w=8..16", t_serial_windows, t_par_windows,
        serial_unique == par_unique.counts);

    return 0;
}
