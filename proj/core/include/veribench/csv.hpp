#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace veribench {

/// Minimal RFC-4180 CSV support: quoted fields, doubled-quote escapes,
/// embedded commas and newlines. Enough for article bodies.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Parses the whole stream; first record becomes the header.
/// Throws std::runtime_error on an unterminated quoted field.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace veribench
