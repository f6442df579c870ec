#pragma once

#include <stdexcept>
#include <string>

namespace onebit {

// Argument outside the domain of a mathematical function (e.g. |w| > 1 in omega).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Matrix or vector shapes that do not conform.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bad scenario parameters, malformed config files or CLI overrides.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pilot for which tau + delta vanishes, so the estimator scaling is undefined.
class DegeneratePilotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A quantity that is nonnegative in exact arithmetic came out clearly negative.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

} // namespace onebit
