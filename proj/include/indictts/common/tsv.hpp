#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace indictts {

struct TsvRow {
  std::size_t lineNumber = 0;
  std::vector<std::string_view> fields;
};

// Splits on '\n' and '\t'. Blank lines and lines starting with '#' are
// skipped; a trailing '\r' is dropped. Views point into `text`.
std::vector<TsvRow> parse_tsv(std::string_view text);

// Value of "version N" in the leading comment block, or 0.
int tsv_version(std::string_view text);

std::string read_file(const std::filesystem::path& path);

std::string_view trim(std::string_view s);

}  // namespace indictts
