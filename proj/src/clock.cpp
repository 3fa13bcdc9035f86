#include "collusion/clock.hpp"

#include <charconv>
#include <stdexcept>

namespace collusion {

namespace {

std::int64_t parse_field(std::string_view text, std::string_view what) {
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw std::invalid_argument("bad clock " + std::string(what) + " in \"" +
                                    std::string(text) + "\"");
    }
    return value;
}

}  // namespace

std::int64_t parse_clock(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string_view::npos ? c1 : c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
        throw std::invalid_argument("clock time \"" + std::string(text) +
                                    "\" is not HH:MM:SS");
    }
    const std::string_view hh = text.substr(0, c1);
    const std::string_view mm = text.substr(c1 + 1, c2 - c1 - 1);
    const std::string_view ss = text.substr(c2 + 1);
    if (hh.size() < 1 || hh.size() > 2 || mm.size() != 2 || ss.size() != 2) {
        throw std::invalid_argument("clock time \"" + std::string(text) +
                                    "\" is not HH:MM:SS");
    }
    const std::int64_t h = parse_field(hh, "hour");
    const std::int64_t m = parse_field(mm, "minute");
    const std::int64_t s = parse_field(ss, "second");
    if (h < 0 || h > 23 || m < 0 || m > 59 || s < 0 || s > 59) {
        throw std::invalid_argument("clock time \"" + std::string(text) +
                                    "\" out of range");
    }
    return h * 3600 + m * 60 + s;
}

std::string format_clock(std::int64_t seconds_since_midnight) {
    if (seconds_since_midnight < 0 || seconds_since_midnight >= 86400) {
        throw std::invalid_argument("clock seconds out of range: " +
                                    std::to_string(seconds_since_midnight));
    }
    const auto h = seconds_since_midnight / 3600;
    const auto m = (seconds_since_midnight / 60) % 60;
    const auto s = seconds_since_midnight % 60;
    char buf[9];
    std::snprintf(buf, sizeof(buf), "%02lld:%02lld:%02lld",
                  static_cast<long long>(h), static_cast<long long>(m),
                  static_cast<long long>(s));
    return std::string(buf);
}

}  // namespace collusion
