#pragma once

namespace onebit {

// Kahan compensated accumulator. Works for std::complex as well, since the
// compensation is applied componentwise by complex +/-.
template <typename T>
class CompensatedSum {
 public:
  void add(const T& x) {
    const T y = x - carry_;
    const T t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  const T& value() const { return sum_; }

 private:
  T sum_{};
  T carry_{};
};

} // namespace onebit
