#pragma once

#include <string>
#include <vector>

namespace nlskdv {

using CsvRow = std::vector<std::string>;

/// Fixed 17-significant-digit formatting; round-trips doubles exactly.
std::string format_double(double x);

/// RFC-4180 CSV with a header row. Throws on empty rows or unwritable path.
void emit_csv(const CsvRow& header, const std::vector<CsvRow>& rows, const std::string& path);
std::string csv_string(const CsvRow& header, const std::vector<CsvRow>& rows);

/// Minimal RFC-4180 parser (quotes, embedded commas/newlines). First row is
/// the header.
struct CsvTable {
    CsvRow header;
    std::vector<CsvRow> rows;
};
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

}  // namespace nlskdv
