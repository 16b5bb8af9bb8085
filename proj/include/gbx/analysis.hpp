// analysis.hpp
// Autocorrelation, sliding-window substring statistics and substring
// location over b-sequences. Window counting is overlapping with stride 1
// throughout; bit-pattern keys are plain text over {0,1} and indices are
// 0-based.
//
// Default autocorrelation mode is circular; linear is provided because
// boundary handling is a free choice. Pure functions over immutable
// inputs; the lag loop and the per-w profile loop run under OpenMP.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gbx/goldbach.hpp"

namespace gbx {

enum class CorrMode { circular, linear };

// C(0) = 1 exactly; |C(i)| <= 1 for all lags.
struct CorrelationSeries {
    CorrMode mode = CorrMode::circular;
    std::vector<double> values;   // index = lag, size = max_lag + 1

    size_t max_lag() const { return values.empty() ? 0 : values.size() - 1; }
};

// Overlapping occurrence counts of every length-w pattern present.
// Sum of counts = length - w + 1; absent patterns have implicit count 0.
struct WindowCounts {
    size_t w = 0;
    size_t length = 0;                        // length of the scanned string
    std::map<std::string, uint64_t> counts;   // pattern -> occurrences

    bool operator==(const WindowCounts&) const = default;
};

// Number of window positions whose pattern occurs exactly once, per w.
// This is the closest-fitting reading of the published per-length counts;
// it is interpretive and reported as such by the comparison CLI.
struct UniqueWindowStats {
    size_t w_min = 0;
    size_t w_max = 0;
    std::vector<uint64_t> counts;   // counts[i] is for w = w_min + i
};

// Circular: C(i) = (1/L) * sum_m a_m * a_((m+i) mod L)
// Linear:   C(i) = (1/(L-i)) * sum_m a_m * a_(m+i)
// Throws std::invalid_argument on empty input or max_lag >= length.
CorrelationSeries autocorrelation(const BSequence& b, size_t max_lag,
                                  CorrMode mode = CorrMode::circular);

// Throws std::invalid_argument if w is out of [1, length] or the string
// contains characters other than '0'/'1'.
WindowCounts count_windows(std::string_view bits, size_t w);

uint64_t unique_window_count(std::string_view bits, size_t w);

UniqueWindowStats unique_window_profile(std::string_view bits, size_t w_min,
                                        size_t w_max);

// All starting indices of overlapping occurrences, ascending. An empty
// result is valid; patterns longer than the string simply never occur.
std::vector<size_t> locate(std::string_view bits, std::string_view pattern);

// ---------------------------------------------------------------
// Export / parse. CSV schemas:
//   CorrelationSeries: lag,value
//   WindowCounts:      w,pattern,count
//   UniqueWindowStats: w,unique_count
// ---------------------------------------------------------------

std::string to_csv(const CorrelationSeries& series);
std::string to_csv(const WindowCounts& wc);
std::string to_csv(const UniqueWindowStats& stats);

std::string to_json(const CorrelationSeries& series);
std::string to_json(const WindowCounts& wc);
std::string to_json(const UniqueWindowStats& stats);

CorrelationSeries correlation_from_csv(std::string_view csv);
WindowCounts window_counts_from_csv(std::string_view csv);
WindowCounts window_counts_from_json(std::string_view json);

} // namespace gbx
