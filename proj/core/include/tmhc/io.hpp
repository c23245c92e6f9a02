#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tmhc {

/// Whole-file read; throws InputError naming the path on failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);
/// Fixed notation with `decimals` digits.
std::string format_fixed(double value, int decimals);

/// RFC 4180 field quoting, only when needed.
std::string csv_field(std::string_view field);
/// Splits one CSV record (no embedded newlines).
std::vector<std::string> split_csv_line(std::string_view line);

/// Reversible mapping of a doc id to a safe file stem: bytes outside
/// [A-Za-z0-9._-] become %XX, as does a leading '.'.
std::string encode_file_stem(std::string_view id);
std::string decode_file_stem(std::string_view stem);

}  // namespace tmhc
