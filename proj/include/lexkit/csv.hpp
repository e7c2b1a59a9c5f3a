#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace lexkit::csv {

// Row-oriented CSV helpers, RFC 4180 dialect: comma separator, double-quote
// escaping, quoted fields may span lines. Output always uses LF endings.

struct Row {
    std::vector<std::string> fields;
    std::size_t line = 0;  // 1-based line number where the row started
};

std::vector<Row> parse(std::string_view text);
std::vector<Row> read_file(const std::filesystem::path& path);

std::string format_field(std::string_view field);
std::string format_row(const std::vector<std::string>& fields);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

}  // namespace lexkit::csv
