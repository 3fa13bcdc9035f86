#include "collusion/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace collusion {

namespace {

std::int64_t floor_div(std::int64_t value, std::int64_t divisor) {
    std::int64_t q = value / divisor;
    if ((value % divisor) != 0 && ((value < 0) != (divisor < 0))) --q;
    return q;
}

}  // namespace

void validate(const AggregationConfig& config) {
    if (config.window_seconds < 1) {
        throw std::invalid_argument("window_seconds must be >= 1");
    }
    if (config.min_length < 1) {
        throw std::invalid_argument("min_length must be >= 1");
    }
}

AggregatedSeries aggregate(const SignedVolumeSeries& series,
                           const AggregationConfig& config) {
    validate(config);
    AggregatedSeries out;
    out.investor_id = series.investor_id;
    if (series.events.empty()) return out;

    // Events are sorted, so windows arrive in non-decreasing order and each
    // window's sum closes when the index advances.
    std::int64_t current = floor_div(series.events.front().timestamp,
                                     config.window_seconds);
    std::int64_t sum = 0;
    for (const auto& event : series.events) {
        const std::int64_t w = floor_div(event.timestamp, config.window_seconds);
        if (w != current) {
            if (sum != 0) out.points.push_back({current, sum});
            current = w;
            sum = 0;
        }
        sum += event.signed_volume;
    }
    if (sum != 0) out.points.push_back({current, sum});
    return out;
}

std::map<std::string, AggregatedSeries> aggregate_all(
    const std::map<std::string, SignedVolumeSeries>& all,
    const AggregationConfig& config) {
    std::map<std::string, AggregatedSeries> out;
    for (const auto& [id, series] : all) {
        out.emplace(id, aggregate(series, config));
    }
    return out;
}

std::map<std::string, AggregatedSeries> filter_eligible(
    const std::map<std::string, AggregatedSeries>& all,
    const AggregationConfig& config) {
    validate(config);
    std::map<std::string, AggregatedSeries> out;
    for (const auto& [id, series] : all) {
        if (series.points.size() >= config.min_length) {
            out.emplace(id, series);
        }
    }
    return out;
}

std::vector<std::pair<std::int64_t, double>> length_cdf(
    const std::vector<std::size_t>& lengths) {
    std::vector<std::pair<std::int64_t, double>> out;
    if (lengths.empty()) return out;

    std::vector<std::size_t> sorted(lengths);
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    const auto lo = static_cast<std::int64_t>(sorted.front());
    const auto hi = static_cast<std::int64_t>(sorted.back());
    out.reserve(static_cast<std::size_t>(hi - lo + 2));
    for (std::int64_t level = lo; level <= hi + 1; ++level) {
        const auto below = std::lower_bound(sorted.begin(), sorted.end(),
                                            static_cast<std::size_t>(level)) -
                           sorted.begin();
        out.emplace_back(level, static_cast<double>(below) / n);
    }
    return out;
}

std::vector<std::pair<std::int64_t, double>> length_cdf(
    const std::map<std::string, AggregatedSeries>& all) {
    std::vector<std::size_t> lengths;
    lengths.reserve(all.size());
    for (const auto& [id, series] : all) lengths.push_back(series.points.size());
    return length_cdf(lengths);
}

}  // namespace collusion
