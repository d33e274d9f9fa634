#pragma once

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace jhflow::cli {

enum class LogLevel { Off = 0, Error, Warn, Info, Debug };

/// Level read once from JHFLOW_LOG (off, error, warn, info, debug); warn if unset.
inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("JHFLOW_LOG");
        const std::string_view v = env ? env : "warn";
        if (v == "off") return LogLevel::Off;
        if (v == "error") return LogLevel::Error;
        if (v == "info") return LogLevel::Info;
        if (v == "debug") return LogLevel::Debug;
        return LogLevel::Warn;
    }();
    return level;
}

template <class... Args>
void log(LogLevel level, const Args&... args) {
    if (level == LogLevel::Off || level > log_level()) return;
    static constexpr std::string_view names[] = {"", "error", "warn", "info", "debug"};
    std::cerr << "jhflow [" << names[static_cast<int>(level)] << "] ";
    (std::cerr << ... << args) << '\n';
}

}  // namespace jhflow::cli
