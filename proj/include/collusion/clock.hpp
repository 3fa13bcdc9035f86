#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace collusion {

// Parses a colon-separated "HH:MM:SS" clock time into seconds since midnight.
// Accepts one- or two-digit hours; minutes and seconds must be two digits in
// [0,59]. Throws std::invalid_argument on anything else.
std::int64_t parse_clock(std::string_view text);

// Inverse of parse_clock for values in [0, 86400). Always two-digit fields.
std::string format_clock(std::int64_t seconds_since_midnight);

}  // namespace collusion
