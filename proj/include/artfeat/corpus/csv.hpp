#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace artfeat::corpus {

// RFC 4180 reading: quoted fields, doubled quotes, CRLF or LF line ends,
// embedded newlines inside quotes. Blank lines are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

// Quotes only when the field contains a comma, quote, or line break.
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace artfeat::corpus
