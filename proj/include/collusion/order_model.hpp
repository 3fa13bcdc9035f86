#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace collusion {

enum class Side { Buy, Sell };

// One limit order. The timestamp is in seconds relative to the session
// anchor (09:00:00 unless configured otherwise), shared by all investors so
// that window indices line up across series.
struct OrderRecord {
    std::string investor_id;
    std::int64_t timestamp = 0;
    Side side = Side::Buy;
    double price = 0.0;
    std::int64_t volume = 0;
};

// Volume with the side folded into its sign: buys positive, sells negative.
inline std::int64_t signed_volume(const OrderRecord& order) {
    return order.side == Side::Buy ? order.volume : -order.volume;
}

struct OrderFileFormat {
    std::int64_t anchor_seconds = 9 * 3600;  // clock seconds of window 0
    // Orders timestamped before the anchor (call auction) are dropped by
    // default; set to true to keep them with negative timestamps.
    bool keep_pre_anchor = false;
};

struct RowError {
    std::size_t row;  // 1-based line number in the file
    std::string reason;
};

struct ParseResult {
    std::vector<OrderRecord> records;  // in file order
    std::vector<RowError> bad_rows;
    std::size_t dropped_pre_anchor = 0;
};

inline constexpr std::string_view kOrderCsvHeader =
    "investor_id,timestamp,side,price,volume";

// Reads the order CSV (header `investor_id,timestamp,side,price,volume`,
// timestamps HH:MM:SS, side Buy/Sell case-insensitive). Malformed rows are
// collected in bad_rows with their line number and reason; parsing continues.
// A missing or wrong header on a non-empty stream throws std::runtime_error.
ParseResult parse_orders(std::istream& source, const OrderFileFormat& format = {});

struct SignedVolumeEvent {
    std::int64_t timestamp = 0;
    std::int64_t signed_volume = 0;  // nonzero; sign encodes the side
};

// Per-investor event series, sorted by timestamp. Equal timestamps keep
// their input order.
struct SignedVolumeSeries {
    std::string investor_id;
    std::vector<SignedVolumeEvent> events;
};

// Splits orders by investor into time-ordered signed-volume series. Every
// order lands in exactly one series.
std::map<std::string, SignedVolumeSeries> to_signed_series(
    const std::vector<OrderRecord>& orders);

}  // namespace collusion
