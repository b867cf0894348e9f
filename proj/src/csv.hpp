#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace triplex::csv {

struct Row {
  size_t line_no = 0;  // 1-based
  std::vector<std::string> fields;
};

/// Reads a comma-separated file. Double-quoted fields may contain commas
/// and doubled quotes; CRLF and LF line endings are both accepted.
/// Throws ParseError when the file cannot be read or a quote is unbalanced.
std::vector<Row> read_file(const std::filesystem::path& path);

}  // namespace triplex::csv
