#include "hypcomp/report.hpp"

#include <cmath>
#include <cstdio>

#include "hypcomp/error.hpp"

namespace hypcomp {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_value(const CsvValue& v) {
  struct Visitor {
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(const std::string& s) const { return quote(s); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, v);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns)
    : out_(path), columns_(std::move(columns)) {
  if (!out_) throw Error(ErrorKind::Config, "cannot open report file " + path.string());
  for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << quote(columns_[i]);
  out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvValue>& values) {
  if (values.size() != columns_.size()) {
    throw Error(ErrorKind::Numerical, "CSV row width does not match the header");
  }
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_value(values[i]);
  out_ << '\n';
  ++rows_;
}

}  // namespace hypcomp
