#include "ptx/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ptx::csv {

namespace {

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

} // namespace

Table read_table(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open file: " + path.string());
    Table t;
    t.path = path.string();
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!have_header) {
            t.header = split_line(line);
            have_header = true;
        } else {
            t.rows.push_back(split_line(line));
        }
    }
    if (!have_header)
        throw std::runtime_error("missing header row in " + path.string());
    return t;
}

double parse_double(const Table& t, size_t row, size_t col)
{
    const std::string& cell = t.rows.at(row - 1).at(col);
    const char* first = cell.data();
    const char* last = first + cell.size();
    while (first != last && (*first == ' ' || *first == '\t'))
        ++first;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        std::ostringstream msg;
        msg << t.path << ": row " << row << ", column " << col + 1
            << " ('" << t.header.at(col) << "'): unparsable numeric cell '" << cell << "'";
        throw std::runtime_error(msg.str());
    }
    return value;
}

long parse_long(const Table& t, size_t row, size_t col)
{
    const std::string& cell = t.rows.at(row - 1).at(col);
    long value = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        std::ostringstream msg;
        msg << t.path << ": row " << row << ", column " << col + 1
            << " ('" << t.header.at(col) << "'): unparsable integer cell '" << cell << "'";
        throw std::runtime_error(msg.str());
    }
    return value;
}

std::string format_double(double value)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{})
        throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

std::string join_row(const std::vector<std::string>& fields)
{
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out.push_back(',');
        out += fields[i];
    }
    return out;
}

std::uint64_t fnv1a64_accumulate(std::uint64_t state, std::string_view data)
{
    for (unsigned char c : data) {
        state ^= c;
        state *= 0x100000001b3ULL;
    }
    return state;
}

std::uint64_t fnv1a64(std::string_view data)
{
    return fnv1a64_accumulate(0xcbf29ce484222325ULL, data);
}

std::string to_hex(std::uint64_t value)
{
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

} // namespace ptx::csv
