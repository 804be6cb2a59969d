#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ptx::csv {

struct Table {
    std::string path;                           // for diagnostics
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows; // data rows, comment lines stripped
};

/// Reads a comma-separated file. Lines starting with '#' are provenance
/// comments and are skipped. The first non-comment line is the header.
Table read_table(const std::filesystem::path& path);

/// Strict double parse; throws with file/row/column context on failure.
/// `row` is the 1-based data row number (as reported to the user).
double parse_double(const Table& t, size_t row, size_t col);

long parse_long(const Table& t, size_t row, size_t col);

/// Shortest round-trip representation (std::to_chars); locale-independent.
std::string format_double(double value);

std::string join_row(const std::vector<std::string>& fields);

/// FNV-1a 64-bit, used for config/dataset fingerprints in provenance headers.
std::uint64_t fnv1a64(std::string_view data);
std::uint64_t fnv1a64_accumulate(std::uint64_t state, std::string_view data);
std::string to_hex(std::uint64_t value);

} // namespace ptx::csv
