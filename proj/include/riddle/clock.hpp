#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace riddle {

using Timestamp = std::chrono::sys_seconds;

Timestamp now_utc();

/// "2024-05-01T12:30:00Z"
std::string format_iso8601(Timestamp t);

/// Accepts only the exact form produced by format_iso8601. Throws Error(InvalidArgument).
Timestamp parse_iso8601(std::string_view text);

/// "2024-05-01"
std::string format_date(Timestamp t);

/// True for a well-formed calendar date "YYYY-MM-DD".
bool is_valid_date(std::string_view text);

} // namespace riddle
