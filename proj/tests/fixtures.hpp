#pragma once

// Shared fixtures for the worked two-investor example used across the test
// suite: twelve limit orders in the first quarter hour of a session.

#include <map>
#include <sstream>
#include <string>

#include "collusion/order_model.hpp"
#include "collusion/series.hpp"

namespace fixtures {

inline constexpr const char* kTwoInvestorCsv =
    "investor_id,timestamp,side,price,volume\n"
    "1,09:00:30,Buy,3211,2\n"
    "1,09:03:06,Sell,3216,2\n"
    "1,09:03:12,Sell,3214,1\n"
    "1,09:08:02,Sell,3206,2\n"
    "1,09:08:26,Buy,3204,6\n"
    "1,09:10:28,Sell,3205,3\n"
    "2,09:00:40,Buy,3211,3\n"
    "2,09:03:04,Sell,3216,4\n"
    "2,09:03:10,Buy,3214,2\n"
    "2,09:08:05,Sell,3206,3\n"
    "2,09:08:30,Buy,3204,10\n"
    "2,09:12:02,Buy,3201,2\n";

inline std::map<std::string, collusion::AggregatedSeries> two_investor_aggregated(
    std::int64_t window_seconds = 60) {
    std::istringstream csv(kTwoInvestorCsv);
    const auto parsed = collusion::parse_orders(csv);
    const collusion::AggregationConfig config{window_seconds, 1};
    return collusion::aggregate_all(collusion::to_signed_series(parsed.records),
                                    config);
}

inline collusion::AggregatedSeries make_series(
    std::string id, std::vector<collusion::AggregatedPoint> points) {
    collusion::AggregatedSeries series;
    series.investor_id = std::move(id);
    series.points = std::move(points);
    return series;
}

}  // namespace fixtures
