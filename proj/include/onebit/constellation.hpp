#pragma once

#include <string>
#include <vector>

#include "onebit/types.hpp"

namespace onebit {

inline constexpr double kConstellationPowerTolerance = 1e-12;

/// Ordered transmit alphabet with unit mean power and pairwise-distinct points.
class Constellation {
 public:
  Constellation(std::vector<cdouble> symbols, std::string name);

  const std::vector<cdouble>& symbols() const& { return symbols_; }
  // By value on temporaries, so `for (auto s : qam16().symbols())` is safe.
  std::vector<cdouble> symbols() && { return std::move(symbols_); }
  const std::string& name() const { return name_; }
  std::size_t size() const { return symbols_.size(); }
  const cdouble& operator[](std::size_t i) const { return symbols_[i]; }

  // Index of `s`, or size() when it is not a member.
  std::size_t index_of(cdouble s) const;

 private:
  std::vector<cdouble> symbols_;
  std::string name_;
};

// Gray-labeled 16-QAM scaled by 1/sqrt(10). Index b0 b1 b2 b3 (MSB first):
// Re = (1 - 2 b0)(2 - (1 - 2 b2)), Im = (1 - 2 b1)(2 - (1 - 2 b3)).
Constellation qam16();

// (+-1 +- j)/sqrt(2) in quadrant order.
Constellation qpsk();

// "qam16"/"16qam" or "qpsk"; throws ConfigError otherwise.
Constellation constellation_by_name(const std::string& name);

} // namespace onebit
