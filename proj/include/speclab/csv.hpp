#pragma once
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace speclab {

// Shortest round-trip-exact decimal form of a double; deterministic for a
// given value, used everywhere a number lands in a report file.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RFC 4180 writer: comma separated, CRLF records, fields quoted only when
// they contain a comma, quote, or line break.
class CsvWriter {
public:
  explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      write_field(fields[i]);
    }
    out_ << "\r\n";
  }

  void row(std::initializer_list<std::string> fields) {
    row(std::vector<std::string>(fields));
  }

  void close() { out_.close(); }

private:
  void write_field(std::string_view f) {
    const bool needs_quote =
        f.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quote) {
      out_ << f;
      return;
    }
    out_ << '"';
    for (char c : f) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }

  std::ofstream out_;
};

}  // namespace speclab
