#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "onebit/errors.hpp"
#include "onebit/types.hpp"

namespace onebit {

// Half-width of the band beyond [-1, 1] that omega() clamps instead of rejecting.
inline constexpr double kArcsinClampBand = 1e-12;

/// Arcsine law (2/pi) asin(w): maps the correlation of two jointly Gaussian
/// components to the correlation of their signs.
///
/// Inputs within kArcsinClampBand of [-1, 1] are clamped; anything further out
/// throws DomainError.
template <typename Scalar>
Scalar omega(Scalar w) {
  if (!std::isfinite(w) || w > Scalar(1) + Scalar(kArcsinClampBand) ||
      w < Scalar(-1) - Scalar(kArcsinClampBand)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "omega: argument " << w << " outside [-1, 1]";
    throw DomainError(msg.str());
  }
  const Scalar clamped = std::clamp(w, Scalar(-1), Scalar(1));
  return Scalar(2) / Scalar(kPi) * std::asin(clamped);
}

// sgn with sgn(0) = +1.
template <typename Scalar>
constexpr Scalar sign_bit(Scalar v) {
  return v < Scalar(0) ? Scalar(-1) : Scalar(1);
}

/// Output of the 1-bit ADC pair on every entry: sqrt((rho K + 1)/2) (+-1 +- j).
template <typename Scalar>
class QuantizedMatrix {
 public:
  QuantizedMatrix(CMatrix<Scalar> entries, Scalar rho, int k_users)
      : entries_(std::move(entries)), rho_(rho), k_users_(k_users) {}

  const CMatrix<Scalar>& entries() const { return entries_; }
  Scalar rho() const { return rho_; }
  int k_users() const { return k_users_; }
  Eigen::Index rows() const { return entries_.rows(); }
  Eigen::Index cols() const { return entries_.cols(); }

  // Magnitude of the real and imaginary parts of each entry.
  Scalar level() const { return std::sqrt((rho_ * Scalar(k_users_) + Scalar(1)) / Scalar(2)); }

 private:
  CMatrix<Scalar> entries_;
  Scalar rho_;
  int k_users_;
};

inline void check_rho_users(double rho, int k_users) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw ConfigError("rho must be positive and finite");
  }
  if (k_users < 1) {
    throw ConfigError("k_users must be at least 1");
  }
}

/// Entrywise 1-bit quantizer scaled so that every output entry has squared
/// magnitude rho K + 1.
template <typename Derived>
QuantizedMatrix<typename Derived::RealScalar> quantize(const Eigen::MatrixBase<Derived>& c,
                                                       typename Derived::RealScalar rho,
                                                       int k_users) {
  using Scalar = typename Derived::RealScalar;
  check_rho_users(static_cast<double>(rho), k_users);
  const Scalar level = std::sqrt((rho * Scalar(k_users) + Scalar(1)) / Scalar(2));
  CMatrix<Scalar> out = c.unaryExpr([level](const std::complex<Scalar>& v) {
    return std::complex<Scalar>(level * sign_bit(v.real()), level * sign_bit(v.imag()));
  });
  return QuantizedMatrix<Scalar>(std::move(out), rho, k_users);
}

template <typename Scalar>
QuantizedMatrix<Scalar> quantize(const QuantizedMatrix<Scalar>& q) {
  return quantize(q.entries(), q.rho(), q.k_users());
}

} // namespace onebit
