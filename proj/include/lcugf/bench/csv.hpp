#pragma once

#include <string>
#include <vector>

namespace lcugf::bench {

/// Shortest-safe round-trip text for a double: 17 significant digits.
std::string format_double(double v);

class CsvTable {
 public:
  CsvTable(std::string file_name, std::vector<std::string> header);

  const std::string& file_name() const { return file_name_; }
  const std::vector<std::string>& header() const { return header_; }
  std::size_t size() const { return rows_.size(); }

  /// Throws ValidationError when the cell count differs from the header.
  void add_row(std::vector<std::string> cells);
  /// Header plus rows, '\n' line endings, fields quoted only when needed.
  std::string render() const;

 private:
  std::string file_name_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace lcugf::bench
