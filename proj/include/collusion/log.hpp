#pragma once

#include <string_view>

// stderr logging, gated by the CLIQUESCAN_LOG environment variable:
// one of debug, info, warn (default), error, off.
namespace collusion::log {

enum class Level { Debug = 0, Info, Warn, Error, Off };

Level threshold();
bool enabled(Level level);
void write(Level level, std::string_view message);

inline void debug(std::string_view m) { write(Level::Debug, m); }
inline void info(std::string_view m) { write(Level::Info, m); }
inline void warn(std::string_view m) { write(Level::Warn, m); }
inline void error(std::string_view m) { write(Level::Error, m); }

}  // namespace collusion::log
