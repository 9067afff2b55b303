#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace hypcomp {

using CsvValue = std::variant<double, std::int64_t, std::string, bool>;

/// Doubles as %.17g; nan and inf spelled out.
std::string format_double(double v);
std::string format_value(const CsvValue& v);

/// Writes a header and rows; values containing commas or quotes are quoted.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns);

  void row(const std::vector<CsvValue>& values);
  std::size_t rows() const { return rows_; }

 private:
  std::ofstream out_;
  std::vector<std::string> columns_;
  std::size_t rows_ = 0;
};

}  // namespace hypcomp
