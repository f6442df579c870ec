#pragma once

#include <iosfwd>
#include <vector>

#include "onebit/chest.hpp"
#include "onebit/constellation.hpp"
#include "onebit/summation.hpp"
#include "onebit/types.hpp"

namespace onebit {

// Negative variances above this threshold are rounding noise and floored to 0.
inline constexpr double kVarianceFloorTolerance = 1e-9;

/// Mean of the single-user MRC estimate x_hat when `s` is transmitted:
///
///   sqrt(2 rho / pi) M tau/(tau + delta)
///     * sum_u p_u^* [ omega(rho Re[p_u s] / n) + j omega(rho Im[p_u s] / n) ],
///   n = sqrt((rho + 1)(rho |s|^2 + 1)).
///
/// `delta` is the single-user pilot correction at the same rho. The sum over the
/// pilot is compensated.
template <typename Scalar>
std::complex<Scalar> expected_symbol(std::complex<Scalar> s, const Pilot<Scalar>& pilot,
                                     Scalar rho, Eigen::Index m_antennas, Scalar delta) {
  check_rho_users(static_cast<double>(rho), 1);
  const Scalar norm = std::sqrt((rho + Scalar(1)) * (rho * std::norm(s) + Scalar(1)));
  const Scalar c = rho / norm;
  CompensatedSum<std::complex<Scalar>> acc;
  for (Eigen::Index u = 0; u < pilot.tau(); ++u) {
    const std::complex<Scalar> ps = pilot(u) * s;
    acc.add(std::conj(pilot(u)) *
            std::complex<Scalar>(omega(c * ps.real()), omega(c * ps.imag())));
  }
  const Scalar tau = Scalar(pilot.tau());
  const Scalar gain = std::sqrt(Scalar(2) / Scalar(kPi) * rho) * Scalar(m_antennas) * tau /
                      (tau + delta);
  return gain * acc.value();
}

// Second moment term (2/pi) rho M tau^2 / (tau + delta); variance plus |E|^2/M equals it.
template <typename Scalar>
Scalar symbol_power(Scalar rho, Eigen::Index m_antennas, Eigen::Index tau, Scalar delta) {
  const Scalar t = Scalar(tau);
  return Scalar(2) / Scalar(kPi) * rho * Scalar(m_antennas) * t * t / (t + delta);
}

namespace detail {
void warn_variance_floor(double raw);
[[noreturn]] void throw_negative_variance(double raw);
} // namespace detail

/// Total variance E|x_hat - E|^2 of the estimate for a symbol whose mean is `expected`.
/// Values in (-kVarianceFloorTolerance, 0) are floored to zero with a warning.
template <typename Scalar>
Scalar symbol_variance_from_mean(std::complex<Scalar> expected, Scalar rho,
                                 Eigen::Index m_antennas, Eigen::Index tau, Scalar delta) {
  const Scalar raw = symbol_power(rho, m_antennas, tau, delta) -
                     std::norm(expected) / Scalar(m_antennas);
  if (raw >= Scalar(0)) return raw;
  if (raw > -Scalar(kVarianceFloorTolerance)) {
    detail::warn_variance_floor(static_cast<double>(raw));
    return Scalar(0);
  }
  detail::throw_negative_variance(static_cast<double>(raw));
}

template <typename Scalar>
Scalar symbol_variance(std::complex<Scalar> s, const Pilot<Scalar>& pilot, Scalar rho,
                       Eigen::Index m_antennas, Scalar delta) {
  return symbol_variance_from_mean(expected_symbol(s, pilot, rho, m_antennas, delta), rho,
                                   m_antennas, pilot.tau(), delta);
}

/// High-SNR limits E/sqrt(rho) and V/rho, evaluated with the rho-free delta_bar.
struct AsymptoticMoments {
  std::vector<cdouble> expected_scaled;
  std::vector<double> variance_scaled;
  double delta_bar = 0.0;
};

AsymptoticMoments asymptotic_moments(const Constellation& constellation, const Pilotd& pilot,
                                     Eigen::Index m_antennas);

/// Expected value and variance of every symbol's estimate at one operating point.
struct MomentTable {
  std::vector<cdouble> symbols;
  std::vector<cdouble> expected;
  std::vector<double> variance;
  EstimationConstantsd constants{};
  double rho = 0.0;
  Eigen::Index m_antennas = 0;
  Eigen::Index tau = 0;

  std::size_t size() const { return symbols.size(); }
};

MomentTable moment_table(const Constellation& constellation, const Pilotd& pilot, double rho,
                         Eigen::Index m_antennas);

// Worst relative violation of variance + |E|^2/M = symbol_power over the table.
double power_identity_residual(const MomentTable& table);

// CSV with header `symbol_re,symbol_im,e_re,e_im,var`.
void write_moment_csv(std::ostream& out, const MomentTable& table);

} // namespace onebit
