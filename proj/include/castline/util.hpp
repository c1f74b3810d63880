#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "castline/types.hpp"

namespace castline {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

/// Current verbosity, taken from the CASTLINE_LOG env var on first use
/// (error|warn|info|debug), default warn.
LogLevel log_level();

void log_message(LogLevel level, const std::string& msg);

inline void log_error(const std::string& m) { log_message(LogLevel::error, m); }
inline void log_warn(const std::string& m) { log_message(LogLevel::warn, m); }
inline void log_info(const std::string& m) { log_message(LogLevel::info, m); }
inline void log_debug(const std::string& m) { log_message(LogLevel::debug, m); }

/// FNV-1a 64-bit over a byte view.
std::uint64_t fnv1a64(std::string_view bytes);

std::string to_hex(std::uint64_t v);

/// Linear-interpolation quantile between order statistics (q in [0,1]).
/// Sorts a copy of the input.
Scalar quantile(std::vector<Scalar> values, Scalar q);

Scalar median(std::vector<Scalar> values);

}  // namespace castline
