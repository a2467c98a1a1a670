// Deterministic result formatting shared by the command-line tools and the
// acceptance suite: 17-significant-digit numbers (bit-exact round trips),
// simple CSV tables, and one-line pass/fail check records with stable
// kebab-case identifiers.
#ifndef THRESHSCATTER_REPORT_HPP
#define THRESHSCATTER_REPORT_HPP

#include <string>
#include <vector>

#include "threshscatter/numeric.hpp"

namespace ts {

/// printf "%.17g": enough digits to reproduce the double exactly, and the
/// same string for the same bits on every run.
std::string format_double(double v);

/// One named measurement compared against a pinned tolerance.
struct CheckLine {
  std::string id;          //!< stable kebab-case check identifier
  bool pass = false;
  double value = 0.0;      //!< measured figure of merit (error, residual, ...)
  double tolerance = 0.0;  //!< pinned bound the value was compared against
  std::string detail;      //!< optional context (sample counts, parameters)
};

/// "ok   <id>  value=<v>  tol=<t>  <detail>" / "FAIL ..." (fixed layout).
std::string format_check_line(const CheckLine& line);

/// True when every check passed.
bool all_passed(const std::vector<CheckLine>& lines);

/// Minimal CSV writer: quotes only when needed, LF line endings, no locale.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> headers);
  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace ts

#endif  // THRESHSCATTER_REPORT_HPP
