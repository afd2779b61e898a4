#include "qsub_cli/csv.hpp"

#include <cstdio>
#include <ostream>

namespace qsub::cli {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (const auto& n : names) cell(std::string_view(n));
  end_row();
}

CsvWriter& CsvWriter::cell(double v) { return cell(std::string_view(format_double(v))); }

CsvWriter& CsvWriter::cell(long v) { return cell(std::string_view(std::to_string(v))); }

CsvWriter& CsvWriter::cell(std::string_view text) {
  if (!first_) os_ << ',';
  os_ << text;
  first_ = false;
  return *this;
}

void CsvWriter::end_row() {
  os_ << '\n';
  first_ = true;
}

void CsvWriter::comment(std::string_view text) { os_ << "# " << text << '\n'; }

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace qsub::cli
