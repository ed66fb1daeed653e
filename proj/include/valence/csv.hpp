#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace valence::csv {

// Canonical number formatting: shortest representation that parses back
// to the identical value. Used everywhere a file must round-trip.
std::string format_double(double v);
std::string format_int(std::int64_t v);

std::optional<double> parse_double(std::string_view text);
std::optional<std::int64_t> parse_int(std::string_view text);

std::vector<std::string_view> split_line(std::string_view line);

// Splits content into lines; accepts a trailing newline, tolerates \r\n.
std::vector<std::string_view> split_lines(std::string_view content);

}  // namespace valence::csv
