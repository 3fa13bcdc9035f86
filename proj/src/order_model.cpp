#include "collusion/order_model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <stdexcept>

#include "collusion/clock.hpp"
#include "collusion/log.hpp"

namespace collusion {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool split_fields(std::string_view line, std::array<std::string_view, 5>& out) {
    std::size_t n = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            if (n == out.size()) return false;
            out[n++] = trim(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return n == out.size();
}

bool parse_side(std::string_view token, Side& out) {
    std::string lowered(token);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered == "buy") {
        out = Side::Buy;
        return true;
    }
    if (lowered == "sell") {
        out = Side::Sell;
        return true;
    }
    return false;
}

bool parse_int(std::string_view token, std::int64_t& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !token.empty();
}

bool parse_price(std::string_view token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !token.empty();
}

}  // namespace

ParseResult parse_orders(std::istream& source, const OrderFileFormat& format) {
    ParseResult result;
    std::string line;
    std::size_t row = 0;

    if (!std::getline(source, line)) {
        return result;  // empty stream: empty order list
    }
    ++row;
    if (trim(line) != kOrderCsvHeader) {
        throw std::runtime_error("order file header mismatch: expected \"" +
                                 std::string(kOrderCsvHeader) + "\", got \"" +
                                 std::string(trim(line)) + "\"");
    }

    while (std::getline(source, line)) {
        ++row;
        const std::string_view body = trim(line);
        if (body.empty()) continue;

        std::array<std::string_view, 5> fields;
        if (!split_fields(body, fields)) {
            result.bad_rows.push_back({row, "expected 5 comma-separated fields"});
            continue;
        }

        OrderRecord record;
        record.investor_id = std::string(fields[0]);
        if (record.investor_id.empty()) {
            result.bad_rows.push_back({row, "empty investor_id"});
            continue;
        }

        std::int64_t clock_seconds = 0;
        try {
            clock_seconds = parse_clock(fields[1]);
        } catch (const std::invalid_argument& e) {
            result.bad_rows.push_back({row, e.what()});
            continue;
        }
        record.timestamp = clock_seconds - format.anchor_seconds;

        if (!parse_side(fields[2], record.side)) {
            result.bad_rows.push_back(
                {row, "unknown side token \"" + std::string(fields[2]) + "\""});
            continue;
        }
        if (!parse_price(fields[3], record.price) || record.price <= 0.0) {
            result.bad_rows.push_back(
                {row, "price must be a positive number, got \"" +
                          std::string(fields[3]) + "\""});
            continue;
        }
        if (!parse_int(fields[4], record.volume) || record.volume < 1) {
            result.bad_rows.push_back(
                {row, "volume must be a positive integer, got \"" +
                          std::string(fields[4]) + "\""});
            continue;
        }

        if (record.timestamp < 0 && !format.keep_pre_anchor) {
            ++result.dropped_pre_anchor;
            continue;
        }
        result.records.push_back(std::move(record));
    }

    if (result.dropped_pre_anchor > 0) {
        log::warn("dropped " + std::to_string(result.dropped_pre_anchor) +
                  " order(s) timestamped before the session anchor");
    }
    return result;
}

std::map<std::string, SignedVolumeSeries> to_signed_series(
    const std::vector<OrderRecord>& orders) {
    std::map<std::string, SignedVolumeSeries> series;
    for (const auto& order : orders) {
        auto& entry = series[order.investor_id];
        if (entry.investor_id.empty()) entry.investor_id = order.investor_id;
        entry.events.push_back({order.timestamp, signed_volume(order)});
    }
    for (auto& [id, entry] : series) {
        std::stable_sort(entry.events.begin(), entry.events.end(),
                         [](const SignedVolumeEvent& a, const SignedVolumeEvent& b) {
                             return a.timestamp < b.timestamp;
                         });
    }
    return series;
}

}  // namespace collusion
