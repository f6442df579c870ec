#include "onebit/csv.hpp"

#include <cstdio>

namespace onebit {

std::string format_double(double value) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

CsvWriter::CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header)
    : out_(out) {
  bool first = true;
  for (auto name : header) {
    if (!first) out_ << ',';
    first = false;
    out_ << name;
  }
  out_ << '\n';
}

} // namespace onebit
