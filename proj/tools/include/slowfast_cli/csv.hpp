#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace slowfast::cli {

/// %.9g with '.' as decimal separator regardless of locale; "nan", "inf",
/// "-inf" for non-finite values.
std::string format_number(double v);
/// Inverse of format_number; throws InvalidArgument on garbage.
double parse_number(std::string_view s);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column; throws InvalidArgument when absent.
    std::size_t column(std::string_view name) const;
    const std::string& at(std::size_t row, std::string_view name) const;
};

void write_csv(std::ostream& os, const CsvTable& table);
std::string to_csv(const CsvTable& table);

/// Reads RFC 4180 style CSV (quoted fields, doubled quotes, CRLF or LF).
/// The first record is the header; every row must have the header's width.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(std::istream& is);

}  // namespace slowfast::cli
