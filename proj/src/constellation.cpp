#include "onebit/constellation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "onebit/errors.hpp"

namespace onebit {

Constellation::Constellation(std::vector<cdouble> symbols, std::string name)
    : symbols_(std::move(symbols)), name_(std::move(name)) {
  if (symbols_.empty()) {
    throw ConfigError("constellation: no symbols");
  }
  double power = 0.0;
  for (const auto& s : symbols_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw ConfigError("constellation: non-finite symbol");
    }
    power += std::norm(s);
  }
  power /= static_cast<double>(symbols_.size());
  if (std::abs(power - 1.0) > kConstellationPowerTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "constellation '" << name_ << "': mean power is " << power << ", expected 1";
    throw ConfigError(msg.str());
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    for (std::size_t j = i + 1; j < symbols_.size(); ++j) {
      if (symbols_[i] == symbols_[j]) {
        std::ostringstream msg;
        msg << "constellation '" << name_ << "': symbols " << i << " and " << j
            << " coincide";
        throw ConfigError(msg.str());
      }
    }
  }
}

std::size_t Constellation::index_of(cdouble s) const {
  const auto it = std::find(symbols_.begin(), symbols_.end(), s);
  return static_cast<std::size_t>(it - symbols_.begin());
}

Constellation qam16() {
  const double scale = 1.0 / std::sqrt(10.0);
  std::vector<cdouble> symbols;
  symbols.reserve(16);
  for (int label = 0; label < 16; ++label) {
    const int b0 = (label >> 3) & 1;
    const int b1 = (label >> 2) & 1;
    const int b2 = (label >> 1) & 1;
    const int b3 = label & 1;
    const double re = (1 - 2 * b0) * (2 - (1 - 2 * b2));
    const double im = (1 - 2 * b1) * (2 - (1 - 2 * b3));
    symbols.emplace_back(scale * re, scale * im);
  }
  return Constellation(std::move(symbols), "qam16");
}

Constellation qpsk() {
  const double a = 1.0 / std::sqrt(2.0);
  return Constellation({{a, a}, {-a, a}, {-a, -a}, {a, -a}}, "qpsk");
}

Constellation constellation_by_name(const std::string& name) {
  std::string key = name;
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "qam16" || key == "16qam" || key == "16-qam") return qam16();
  if (key == "qpsk") return qpsk();
  throw ConfigError("unknown constellation '" + name + "'");
}

} // namespace onebit
