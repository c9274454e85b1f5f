#include "indictts/common/tsv.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "indictts/common/error.hpp"

namespace indictts {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<TsvRow> parse_tsv(std::string_view text) {
  std::vector<TsvRow> rows;
  std::size_t lineNumber = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    ++lineNumber;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty() && line.front() != '#') {
      TsvRow row;
      row.lineNumber = lineNumber;
      std::size_t start = 0;
      while (true) {
        const auto tab = line.find('\t', start);
        row.fields.push_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
      }
      rows.push_back(std::move(row));
    }
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return rows;
}

int tsv_version(std::string_view text) {
  static const std::regex pattern(R"(version\s+(\d+))");
  std::size_t pos = 0;
  while (pos < text.size() && text[pos] == '#') {
    const auto end = text.find('\n', pos);
    const std::string line(text.substr(pos, end == std::string_view::npos ? text.npos : end - pos));
    std::smatch m;
    if (std::regex_search(line, m, pattern)) return std::stoi(m[1]);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return 0;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace indictts
