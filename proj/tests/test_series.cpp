#include <doctest.h>

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "collusion/series.hpp"
#include "fixtures.hpp"

using namespace collusion;

namespace {

SignedVolumeSeries events_series(std::string id,
                                 std::vector<SignedVolumeEvent> events) {
    SignedVolumeSeries s;
    s.investor_id = std::move(id);
    s.events = std::move(events);
    return s;
}

std::vector<std::pair<std::int64_t, std::int64_t>> as_pairs(
    const AggregatedSeries& series) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& p : series.points) out.emplace_back(p.window_index, p.value);
    return out;
}

SignedVolumeSeries random_series(std::mt19937& rng, std::string id) {
    std::uniform_int_distribution<int> count(0, 60);
    std::uniform_int_distribution<std::int64_t> when(0, 7200);
    std::uniform_int_distribution<std::int64_t> volume(1, 30);
    std::bernoulli_distribution buys(0.5);
    std::vector<SignedVolumeEvent> events;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        const auto v = volume(rng);
        events.push_back({when(rng), buys(rng) ? v : -v});
    }
    std::sort(events.begin(), events.end(),
              [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    return events_series(std::move(id), std::move(events));
}

}  // namespace

TEST_CASE("aggregation matches the worked two-investor example") {
    const auto aggregated = fixtures::two_investor_aggregated(60);
    REQUIRE(aggregated.size() == 2);
    CHECK(as_pairs(aggregated.at("1")) ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{
              {0, 2}, {3, -3}, {8, 4}, {10, -3}});
    CHECK(as_pairs(aggregated.at("2")) ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{
              {0, 3}, {3, -2}, {8, 7}, {12, 2}});
}

TEST_CASE("windows whose signed volumes cancel are omitted") {
    const auto series = events_series("x", {{10, 3}, {50, -3}, {70, 4}});
    const auto aggregated = aggregate(series, {60, 1});
    CHECK(as_pairs(aggregated) ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 4}});
}

TEST_CASE("aggregate validates the configuration") {
    const auto series = events_series("x", {{0, 1}});
    CHECK_THROWS_AS(aggregate(series, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(aggregate(series, {60, 0}), std::invalid_argument);
    CHECK(aggregate(events_series("e", {}), {60, 1}).points.empty());
}

TEST_CASE("aggregation preserves total signed volume and window containment") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto series = random_series(rng, "r");
        const AggregationConfig config{1 + (trial % 7) * 13, 1};
        const auto aggregated = aggregate(series, config);

        std::int64_t event_sum = 0;
        std::set<std::int64_t> event_windows;
        for (const auto& e : series.events) {
            event_sum += e.signed_volume;
            event_windows.insert(e.timestamp / config.window_seconds);
        }
        std::int64_t point_sum = 0;
        std::int64_t previous = std::numeric_limits<std::int64_t>::min();
        for (const auto& p : aggregated.points) {
            CHECK(p.value != 0);
            CHECK(p.window_index > previous);  // strictly increasing
            previous = p.window_index;
            CHECK(event_windows.count(p.window_index) == 1);
            point_sum += p.value;
        }
        CHECK(point_sum == event_sum);
    }
}

TEST_CASE("filter_eligible keeps series no shorter than the threshold") {
    std::map<std::string, AggregatedSeries> all;
    for (std::size_t len : {14, 15, 16}) {
        AggregatedSeries s;
        s.investor_id = "len" + std::to_string(len);
        for (std::size_t i = 0; i < len; ++i) {
            s.points.push_back({static_cast<std::int64_t>(i), 1});
        }
        all.emplace(s.investor_id, s);
    }

    const auto kept = filter_eligible(all, {60, 15});
    CHECK(kept.size() == 2);
    CHECK(kept.count("len14") == 0);
    CHECK(kept.count("len15") == 1);
    CHECK(kept.count("len16") == 1);

    const auto identity = filter_eligible(all, {60, 1});
    CHECK(identity.size() == all.size());
}

TEST_CASE("filtering is monotone in the threshold") {
    std::mt19937 rng(31);
    std::map<std::string, AggregatedSeries> all;
    for (int i = 0; i < 40; ++i) {
        auto aggregated = aggregate(random_series(rng, "r" + std::to_string(i)), {60, 1});
        if (!aggregated.points.empty()) all.emplace(aggregated.investor_id, aggregated);
    }
    for (std::size_t low = 1; low < 12; low += 2) {
        const auto larger = filter_eligible(all, {60, low});
        const auto smaller = filter_eligible(all, {60, low + 5});
        for (const auto& [id, s] : smaller) {
            CHECK(larger.count(id) == 1);
        }
        CHECK(smaller.size() <= larger.size());
    }
}

TEST_CASE("length_cdf is the strictly-less-than empirical CDF") {
    const auto cdf = length_cdf(std::vector<std::size_t>{3, 3, 20});
    REQUIRE(!cdf.empty());
    std::map<std::int64_t, double> at(cdf.begin(), cdf.end());
    CHECK(at.at(3) == doctest::Approx(0.0));
    CHECK(at.at(4) == doctest::Approx(2.0 / 3.0));
    CHECK(at.at(21) == doctest::Approx(1.0));

    double previous = -1.0;
    for (const auto& [length, value] : cdf) {
        CHECK(value >= previous);  // non-decreasing
        CHECK(value >= 0.0);
        CHECK(value <= 1.0);
        previous = value;
    }
    CHECK(cdf.back().second == doctest::Approx(1.0));
}

TEST_CASE("length_cdf of a single series steps from 0 to 1") {
    const auto cdf = length_cdf(std::vector<std::size_t>{5});
    REQUIRE(cdf.size() == 2);
    CHECK(cdf[0] == std::pair<std::int64_t, double>{5, 0.0});
    CHECK(cdf[1] == std::pair<std::int64_t, double>{6, 1.0});
}

TEST_CASE("length_cdf of empty input is empty") {
    CHECK(length_cdf(std::vector<std::size_t>{}).empty());
    CHECK(length_cdf(std::map<std::string, AggregatedSeries>{}).empty());
}
