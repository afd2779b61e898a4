#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qsub::cli {

/// 17 significant digits (printf %.17g), enough to round-trip any double.
std::string format_double(double v);

/// Comma-separated rows terminated by '\n'. Cells are written verbatim.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& names);
  CsvWriter& cell(double v);
  CsvWriter& cell(long v);
  CsvWriter& cell(std::string_view text);
  void end_row();
  void comment(std::string_view text);

 private:
  std::ostream& os_;
  bool first_ = true;
};

/// Splits one CSV line on commas (no quoting; the writer never quotes).
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace qsub::cli
