// io.hpp - file helpers and number formatting used across modules.

#ifndef SENTI_IO_HPP
#define SENTI_IO_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace senti::io
{

std::string read_text(const std::filesystem::path& path);

/// Write through a temporary sibling and rename it into place.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

/// Byte offset of the first invalid UTF-8 sequence, or nullopt.
std::optional<std::size_t> find_invalid_utf8(std::string_view text);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Strict full-token parse; rejects trailing garbage. Accepts inf/nan text.
std::optional<double> parse_double(std::string_view text);

}  // namespace senti::io

#endif  // SENTI_IO_HPP
