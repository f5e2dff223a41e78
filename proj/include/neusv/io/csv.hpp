#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace neusv::io {

/// Comma-separated table with a header row. Fields may be double-quoted;
/// a doubled quote inside a quoted field is a literal quote.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column. Throws ErrorCode::Schema if absent.
    std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);

std::string format_csv(const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Parses a whole field as a number. Throws ErrorCode::Schema otherwise.
double parse_number(const std::string& field, const std::string& context);

/// Shortest decimal text that reads back to exactly `x`.
std::string format_number(double x);

} // namespace neusv::io
