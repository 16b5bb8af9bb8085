// analysis.cpp

#include "gbx/analysis.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace gbx {

namespace {

void require_bits(std::string_view bits, const char* who) {
    for (char c : bits)
        if (c != '0' && c != '1')
            throw std::invalid_argument(std::string(who) +
                                        ": string must be over {0,1}");
}

// Shortest representation that survives 12 significant digits; "1" for
// 1.0, "-0.05" for -0.05.
std::string fmt_double(double v) {
    std::ostringstream ss;
    ss << std::setprecision(12) << v;
    return ss.str();
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.emplace_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    size_t pos = 0;
    while (true) {
        size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

uint64_t parse_u64(const std::string& s, const char* what) {
    try {
        size_t idx = 0;
        uint64_t v = std::stoull(s, &idx);
        if (idx != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + ": '" + s + "'");
    }
}

} // namespace

CorrelationSeries autocorrelation(const BSequence& b, size_t max_lag,
                                  CorrMode mode) {
    const auto& a = b.symbols();
    const size_t n = a.size();
    if (n == 0)
        throw std::invalid_argument("autocorrelation: empty sequence");
    if (max_lag >= n)
        throw std::invalid_argument("autocorrelation: max_lag " +
                                    std::to_string(max_lag) +
                                    " must be < length " + std::to_string(n));

    CorrelationSeries series;
    series.mode = mode;
    series.values.assign(max_lag + 1, 0.0);

    #pragma omp parallel for schedule(static)
    for (int64_t lag = 0; lag <= static_cast<int64_t>(max_lag); ++lag) {
        long long sum = 0;
        const size_t i = static_cast<size_t>(lag);
        if (mode == CorrMode::circular) {
            for (size_t m = 0; m < n; ++m)
                sum += static_cast<long long>(a[m]) * a[(m + i) % n];
            series.values[i] = static_cast<double>(sum) / static_cast<double>(n);
        } else {
            for (size_t m = 0; m + i < n; ++m)
                sum += static_cast<long long>(a[m]) * a[m + i];
            series.values[i] =
                static_cast<double>(sum) / static_cast<double>(n - i);
        }
    }
    return series;
}

WindowCounts count_windows(std::string_view bits, size_t w) {
    require_bits(bits, "count_windows");
    if (w < 1 || w > bits.size())
        throw std::invalid_argument("count_windows: w must be in [1, " +
                                    std::to_string(bits.size()) + "], got " +
                                    std::to_string(w));

    WindowCounts wc;
    wc.w = w;
    wc.length = bits.size();

    if (w <= 32) {
        // Rolling packed code, one map rehash per distinct pattern.
        const uint64_t mask = (1ULL << w) - 1;
        std::unordered_map<uint64_t, uint64_t> packed;
        packed.reserve(std::min<size_t>(bits.size(), 1ULL << std::min<size_t>(w, 20)));
        uint64_t code = 0;
        for (size_t i = 0; i < bits.size(); ++i) {
            code = ((code << 1) | static_cast<uint64_t>(bits[i] - '0')) & mask;
            if (i + 1 >= w) ++packed[code];
        }
        for (const auto& [c, cnt] : packed) {
            std::string pat(w, '0');
            for (size_t j = 0; j < w; ++j)
                if ((c >> (w - 1 - j)) & 1ULL) pat[j] = '1';
            wc.counts.emplace(std::move(pat), cnt);
        }
    } else {
        for (size_t i = 0; i + w <= bits.size(); ++i)
            ++wc.counts[std::string(bits.substr(i, w))];
    }
    return wc;
}

uint64_t unique_window_count(std::string_view bits, size_t w) {
    const WindowCounts wc = count_windows(bits, w);
    uint64_t unique = 0;
    for (const auto& [pat, cnt] : wc.counts)
        if (cnt == 1) ++unique;
    return unique;
}

UniqueWindowStats unique_window_profile(std::string_view bits, size_t w_min,
                                        size_t w_max) {
    if (w_min < 1 || w_min > w_max || w_max > bits.size())
        throw std::invalid_argument("unique_window_profile: bad w range");
    require_bits(bits, "unique_window_profile");

    UniqueWindowStats stats;
    stats.w_min = w_min;
    stats.w_max = w_max;
    stats.counts.assign(w_max - w_min + 1, 0);

    #pragma omp parallel for schedule(dynamic)
    for (int64_t i = 0; i < static_cast<int64_t>(stats.counts.size()); ++i)
        stats.counts[i] = unique_window_count(bits, w_min + static_cast<size_t>(i));
    return stats;
}

std::vector<size_t> locate(std::string_view bits, std::string_view pattern) {
    require_bits(bits, "locate");
    require_bits(pattern, "locate");
    if (pattern.empty())
        throw std::invalid_argument("locate: pattern must be nonempty");

    std::vector<size_t> out;
    if (pattern.size() > bits.size()) return out;
    size_t pos = bits.find(pattern);
    while (pos != std::string_view::npos) {
        out.push_back(pos);
        pos = bits.find(pattern, pos + 1);
    }
    return out;
}

// ---------------------------------------------------------------
// Export / parse
// ---------------------------------------------------------------

std::string to_csv(const CorrelationSeries& series) {
    std::string out = "lag,value\n";
    for (size_t i = 0; i < series.values.size(); ++i)
        out += std::to_string(i) + "," + fmt_double(series.values[i]) + "\n";
    return out;
}

std::string to_csv(const WindowCounts& wc) {
    std::string out = "w,pattern,count\n";
    for (const auto& [pat, cnt] : wc.counts)
        out += std::to_string(wc.w) + "," + pat + "," + std::to_string(cnt) + "\n";
    return out;
}

std::string to_csv(const UniqueWindowStats& stats) {
    std::string out = "w,unique_count\n";
    for (size_t i = 0; i < stats.counts.size(); ++i)
        out += std::to_string(stats.w_min + i) + "," +
               std::to_string(stats.counts[i]) + "\n";
    return out;
}

std::string to_json(const CorrelationSeries& series) {
    nlohmann::json j;
    j["mode"] = series.mode == CorrMode::circular ? "circular" : "linear";
    j["values"] = series.values;
    return j.dump();
}

std::string to_json(const WindowCounts& wc) {
    nlohmann::json j;
    j["w"] = wc.w;
    j["length"] = wc.length;
    j["counts"] = nlohmann::json::object();
    for (const auto& [pat, cnt] : wc.counts) j["counts"][pat] = cnt;
    return j.dump();
}

std::string to_json(const UniqueWindowStats& stats) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < stats.counts.size(); ++i)
        rows.push_back({{"w", stats.w_min + i}, {"unique_count", stats.counts[i]}});
    return rows.dump();
}

CorrelationSeries correlation_from_csv(std::string_view csv) {
    auto lines = split_lines(csv);
    if (lines.empty() || lines[0] != "lag,value")
        throw std::invalid_argument("correlation_from_csv: missing header");
    CorrelationSeries series;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = split_fields(lines[i]);
        if (f.size() != 2)
            throw std::invalid_argument("correlation_from_csv: bad row '" +
                                        lines[i] + "'");
        if (parse_u64(f[0], "lag") != series.values.size())
            throw std::invalid_argument("correlation_from_csv: lags not contiguous");
        series.values.push_back(std::stod(f[1]));
    }
    return series;
}

WindowCounts window_counts_from_csv(std::string_view csv) {
    auto lines = split_lines(csv);
    if (lines.empty() || lines[0] != "w,pattern,count")
        throw std::invalid_argument("window_counts_from_csv: missing header");
    WindowCounts wc;
    uint64_t total = 0;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = split_fields(lines[i]);
        if (f.size() != 3)
            throw std::invalid_argument("window_counts_from_csv: bad row '" +
                                        lines[i] + "'");
        const uint64_t w = parse_u64(f[0], "w");
        require_bits(f[1], "window_counts_from_csv");
        if (wc.w == 0)
            wc.w = w;
        else if (wc.w != w)
            throw std::invalid_argument("window_counts_from_csv: mixed w values");
        if (f[1].size() != wc.w)
            throw std::invalid_argument("window_counts_from_csv: pattern '" +
                                        f[1] + "' has wrong length");
        const uint64_t cnt = parse_u64(f[2], "count");
        if (!wc.counts.emplace(f[1], cnt).second)
            throw std::invalid_argument("window_counts_from_csv: duplicate pattern");
        total += cnt;
    }
    if (wc.w == 0)
        throw std::invalid_argument("window_counts_from_csv: no rows");
    wc.length = total + wc.w - 1;
    return wc;
}

WindowCounts window_counts_from_json(std::string_view json) {
    const auto j = nlohmann::json::parse(json);
    WindowCounts wc;
    wc.w = j.at("w").get<size_t>();
    wc.length = j.at("length").get<size_t>();
    for (const auto& [pat, cnt] : j.at("counts").items())
        wc.counts[pat] = cnt.get<uint64_t>();
    return wc;
}

} // namespace gbx
