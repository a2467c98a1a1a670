#include "threshscatter/report.hpp"

#include <cstdio>
#include <fstream>

namespace ts {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_check_line(const CheckLine& line) {
  std::string out = line.pass ? "ok   " : "FAIL ";
  out += line.id;
  if (out.size() < 42) out.append(42 - out.size(), ' ');
  out += "  value=";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", line.value);
  out += buf;
  out += "  tol=";
  std::snprintf(buf, sizeof(buf), "%.3g", line.tolerance);
  out += buf;
  if (!line.detail.empty()) {
    out += "  (";
    out += line.detail;
    out += ")";
  }
  return out;
}

bool all_passed(const std::vector<CheckLine>& lines) {
  for (const CheckLine& l : lines)
    if (!l.pass) return false;
  return true;
}

namespace {
std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}
}  // namespace

CsvTable::CsvTable(std::vector<std::string> headers)
    : headers_(std::move(headers)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != headers_.size())
    throw domain_error("CsvTable: row width does not match the header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t j = 0; j < headers_.size(); ++j) {
    if (j) out += ',';
    out += csv_cell(headers_[j]);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += csv_cell(row[j]);
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("CsvTable: cannot open " + path);
  f << str();
}

}  // namespace ts
