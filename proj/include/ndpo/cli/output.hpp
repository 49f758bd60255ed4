#pragma once

#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

namespace ndpo::cli {

// 17 significant digits: round-trip exact for double.
std::string format_double(double value);

class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<std::string_view> header);

  CsvWriter& cell(double value);
  CsvWriter& cell(long long value);
  CsvWriter& cell(std::string_view text);  // quoted when it contains a comma or quote
  void end_row();

  std::string str() const { return out_.str(); }

 private:
  void separator();

  std::ostringstream out_;
  bool row_started_ = false;
};

// Writes text to a file, or to stdout for an empty path or "-".
void write_text(const std::string& path, const std::string& text);
bool is_stdout(const std::string& path);
std::string sidecar_path(const std::string& out);

}  // namespace ndpo::cli
