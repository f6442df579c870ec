#pragma once

#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace onebit {

// Shortest decimal with 17 significant digits (round-trips any double).
std::string format_double(double value);

/// Minimal comma-separated writer: one header line, then rows of numbers.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    (write_field(fields, first), ...);
    out_ << '\n';
  }

 private:
  template <typename T>
  void write_field(const T& value, bool& first) {
    if (!first) out_ << ',';
    first = false;
    if constexpr (std::floating_point<T>) {
      out_ << format_double(static_cast<double>(value));
    } else {
      out_ << value;
    }
  }

  std::ostream& out_;
};

} // namespace onebit
