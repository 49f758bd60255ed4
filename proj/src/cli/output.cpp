#include "ndpo/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "ndpo/error.hpp"

namespace ndpo::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CsvWriter::CsvWriter(std::initializer_list<std::string_view> header) {
  for (auto h : header) cell(h);
  end_row();
}

void CsvWriter::separator() {
  if (row_started_) out_ << ',';
  row_started_ = true;
}

CsvWriter& CsvWriter::cell(double value) {
  separator();
  out_ << format_double(value);
  return *this;
}

CsvWriter& CsvWriter::cell(long long value) {
  separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  separator();
  if (text.find_first_of(",\"\n") == std::string_view::npos) {
    out_ << text;
    return *this;
  }
  out_ << '"';
  for (char ch : text) {
    if (ch == '"') out_ << '"';
    out_ << ch;
  }
  out_ << '"';
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

bool is_stdout(const std::string& path) { return path.empty() || path == "-"; }

void write_text(const std::string& path, const std::string& text) {
  if (is_stdout(path)) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file " + path);
  out << text;
  if (!out) throw UsageError("failed writing output file " + path);
}

std::string sidecar_path(const std::string& out) { return out + ".json"; }

}  // namespace ndpo::cli
