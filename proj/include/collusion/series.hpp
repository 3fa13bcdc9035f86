#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "collusion/order_model.hpp"

namespace collusion {

struct AggregationConfig {
    std::int64_t window_seconds = 60;  // aggregation window width
    std::size_t min_length = 15;       // eligibility threshold on point count
};

// Throws std::invalid_argument when a field is outside its domain.
void validate(const AggregationConfig& config);

struct AggregatedPoint {
    std::int64_t window_index = 0;  // floor(timestamp / window_seconds)
    std::int64_t value = 0;         // nonzero sum of signed volumes
};

// Window-indexed sums of signed volume with zero-sum windows removed.
// Points are strictly increasing in window_index.
struct AggregatedSeries {
    std::string investor_id;
    std::vector<AggregatedPoint> points;
};

// Sums signed volumes per window of width window_seconds, anchored at
// timestamp 0 (the shared session anchor), and drops windows whose sum
// cancels to zero.
AggregatedSeries aggregate(const SignedVolumeSeries& series,
                           const AggregationConfig& config);

std::map<std::string, AggregatedSeries> aggregate_all(
    const std::map<std::string, SignedVolumeSeries>& all,
    const AggregationConfig& config);

// Keeps exactly the series with at least min_length points.
std::map<std::string, AggregatedSeries> filter_eligible(
    const std::map<std::string, AggregatedSeries>& all,
    const AggregationConfig& config);

// Empirical strictly-less-than CDF F(L) = P(length < L) over the series
// lengths, one point per integer L from the shortest observed length to one
// past the longest. Empty input yields an empty list.
std::vector<std::pair<std::int64_t, double>> length_cdf(
    const std::vector<std::size_t>& lengths);

std::vector<std::pair<std::int64_t, double>> length_cdf(
    const std::map<std::string, AggregatedSeries>& all);

}  // namespace collusion
