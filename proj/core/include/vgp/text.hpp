#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vgp::text {

// Shortest representation that parses back to the identical double.
std::string format_double(double value);
std::optional<double> parse_double(std::string_view token);
std::optional<long long> parse_int(std::string_view token);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char delimiter);

std::optional<std::chrono::year_month_day> parse_iso_date(std::string_view token);
std::string format_iso_date(std::chrono::year_month_day date);

} // namespace vgp::text
