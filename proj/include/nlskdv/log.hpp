#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace nlskdv {

enum class LogLevel { error = 0, info = 1, debug = 2 };

/// Level comes from NLSKDV_LAB_LOG in {error, info, debug}; default error.
inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("NLSKDV_LAB_LOG");
        if (!env) return LogLevel::error;
        if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
        if (std::strcmp(env, "info") == 0) return LogLevel::info;
        return LogLevel::error;
    }();
    return level;
}

inline void log_msg(LogLevel level, const std::string& msg) {
    if (static_cast<int>(level) > static_cast<int>(log_level())) return;
    const char* tag = level == LogLevel::error ? "error" : level == LogLevel::info ? "info" : "debug";
    std::fprintf(stderr, "[nlskdv-lab %s] %s\n", tag, msg.c_str());
}

inline void log_info(const std::string& msg) { log_msg(LogLevel::info, msg); }
inline void log_debug(const std::string& msg) { log_msg(LogLevel::debug, msg); }
inline void log_error(const std::string& msg) { log_msg(LogLevel::error, msg); }

}  // namespace nlskdv
