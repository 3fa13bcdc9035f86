#include "collusion/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace collusion::log {

namespace {

Level parse_level(const char* text) {
    if (text == nullptr) return Level::Warn;
    const std::string v(text);
    if (v == "debug") return Level::Debug;
    if (v == "info") return Level::Info;
    if (v == "warn" || v == "warning") return Level::Warn;
    if (v == "error") return Level::Error;
    if (v == "off" || v == "quiet" || v == "none") return Level::Off;
    return Level::Warn;
}

const char* tag(Level level) {
    switch (level) {
        case Level::Debug: return "debug";
        case Level::Info: return "info";
        case Level::Warn: return "warn";
        case Level::Error: return "error";
        default: return "?";
    }
}

}  // namespace

Level threshold() {
    static const Level level = parse_level(std::getenv("CLIQUESCAN_LOG"));
    return level;
}

bool enabled(Level level) { return level >= threshold(); }

void write(Level level, std::string_view message) {
    if (!enabled(level)) return;
    std::fprintf(stderr, "[%s] %.*s\n", tag(level),
                 static_cast<int>(message.size()), message.data());
}

}  // namespace collusion::log
