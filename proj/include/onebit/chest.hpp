#pragma once

#include <cmath>
#include <sstream>
#include <utility>

#include "onebit/errors.hpp"
#include "onebit/qmath.hpp"
#include "onebit/summation.hpp"
#include "onebit/types.hpp"

namespace onebit {

inline constexpr double kPilotModulusTolerance = 1e-12;
inline constexpr double kPilotOrthogonalityTolerance = 1e-9;

/// Single-user pilot: tau unit-modulus complex symbols. Construction rejects
/// entries off the unit circle; nothing is renormalized.
template <typename Scalar>
class Pilot {
 public:
  explicit Pilot(CVector<Scalar> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 1) {
      throw ConfigError("pilot: length must be at least 1");
    }
    for (Eigen::Index u = 0; u < entries_.size(); ++u) {
      const Scalar dev = std::abs(std::abs(entries_(u)) - Scalar(1));
      if (!(dev <= Scalar(kPilotModulusTolerance))) {
        std::ostringstream msg;
        msg << "pilot: entry " << u << " has modulus " << std::abs(entries_(u))
            << ", expected 1";
        throw ConfigError(msg.str());
      }
    }
  }

  const CVector<Scalar>& entries() const { return entries_; }
  Eigen::Index tau() const { return entries_.size(); }
  const std::complex<Scalar>& operator()(Eigen::Index u) const { return entries_(u); }

 private:
  CVector<Scalar> entries_;
};

/// tau x K pilot matrix with unit-modulus entries and P^H P = tau I_K.
template <typename Scalar>
class PilotMatrix {
 public:
  explicit PilotMatrix(CMatrix<Scalar> entries) : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.cols() < 1) {
      throw ConfigError("pilot matrix: shape must be at least 1x1");
    }
    if (entries_.rows() < entries_.cols()) {
      throw ConfigError("pilot matrix: pilot length must be at least the number of users");
    }
    for (Eigen::Index i = 0; i < entries_.size(); ++i) {
      if (!(std::abs(std::abs(entries_.data()[i]) - Scalar(1)) <=
            Scalar(kPilotModulusTolerance))) {
        throw ConfigError("pilot matrix: entries must have unit modulus");
      }
    }
    const Eigen::Index k = entries_.cols();
    const CMatrix<Scalar> gram = entries_.adjoint() * entries_;
    const CMatrix<Scalar> target =
        Scalar(entries_.rows()) * CMatrix<Scalar>::Identity(k, k);
    if (!((gram - target).cwiseAbs().maxCoeff() <= Scalar(kPilotOrthogonalityTolerance))) {
      throw ConfigError("pilot matrix: columns are not orthogonal");
    }
  }

  // Single-column matrix from a single-user pilot.
  explicit PilotMatrix(const Pilot<Scalar>& pilot) : entries_(pilot.entries()) {}

  const CMatrix<Scalar>& entries() const { return entries_; }
  Eigen::Index tau() const { return entries_.rows(); }
  Eigen::Index k_users() const { return entries_.cols(); }

 private:
  CMatrix<Scalar> entries_;
};

/// Pilot-dependent correction delta and the MSE-optimal estimator scaling upsilon.
template <typename Scalar>
struct EstimationConstants {
  Scalar delta;
  Scalar upsilon;
};

/// Second DFT column of size tau: p_u = exp(-j (u-1) 2 pi / tau), u = 1..tau.
template <typename Scalar = double>
Pilot<Scalar> dft_pilot(Eigen::Index tau) {
  if (tau < 1) {
    throw ConfigError("dft_pilot: tau must be at least 1");
  }
  CVector<Scalar> p(tau);
  for (Eigen::Index u = 0; u < tau; ++u) {
    const Scalar phase = -Scalar(2) * Scalar(kPi) * Scalar(u) / Scalar(tau);
    p(u) = std::polar(Scalar(1), phase);
  }
  return Pilot<Scalar>(std::move(p));
}

namespace detail {

// Sum over ordered pairs u != v of
//   Re[p_u^* p_v] omega(c Re[p_u p_v^*]) - Im[p_u^* p_v] omega(c Im[p_u p_v^*]).
template <typename Scalar>
Scalar single_user_delta(const Pilot<Scalar>& pilot, Scalar correlation) {
  CompensatedSum<Scalar> acc;
  const Eigen::Index tau = pilot.tau();
  for (Eigen::Index u = 0; u < tau; ++u) {
    for (Eigen::Index v = 0; v < tau; ++v) {
      if (u == v) continue;
      const std::complex<Scalar> cross = std::conj(pilot(u)) * pilot(v);
      const std::complex<Scalar> outer = pilot(u) * std::conj(pilot(v));
      acc.add(cross.real() * omega(correlation * outer.real()) -
              cross.imag() * omega(correlation * outer.imag()));
    }
  }
  return acc.value();
}

} // namespace detail

/// Delta for a general tau x K pilot matrix, evaluated through the Gram matrix
/// G = P P^H, whose (u, v) entry is sum_i P_{u,i} P_{v,i}^*.
template <typename Scalar>
Scalar delta_general(const PilotMatrix<Scalar>& pilots, Scalar rho) {
  check_rho_users(static_cast<double>(rho), static_cast<int>(pilots.k_users()));
  const Scalar k = Scalar(pilots.k_users());
  const Scalar scale = rho / (rho * k + Scalar(1));
  const CMatrix<Scalar> gram = pilots.entries() * pilots.entries().adjoint();
  CompensatedSum<Scalar> acc;
  for (Eigen::Index v = 0; v < gram.cols(); ++v) {
    for (Eigen::Index u = 0; u < gram.rows(); ++u) {
      if (u == v) continue;
      // sum_k P_{u,k}^* P_{v,k} = conj(G_{u,v}).
      const std::complex<Scalar> g = gram(u, v);
      acc.add(g.real() * omega(scale * g.real()) + g.imag() * omega(scale * g.imag()));
    }
  }
  return acc.value() / k;
}

/// Single-user delta at finite SNR (correlation factor rho / (rho + 1)).
template <typename Scalar>
Scalar delta_single_user(const Pilot<Scalar>& pilot, Scalar rho) {
  check_rho_users(static_cast<double>(rho), 1);
  return detail::single_user_delta(pilot, rho / (rho + Scalar(1)));
}

/// High-SNR limit of the single-user delta (correlation factor 1).
template <typename Scalar>
Scalar delta_high_snr(const Pilot<Scalar>& pilot) {
  return detail::single_user_delta(pilot, Scalar(1));
}

/// (2/pi) rho / (rho K + 1)^2 * tau^2 / (tau + delta)^2.
template <typename Scalar>
Scalar upsilon(Scalar rho, int k_users, Eigen::Index tau, Scalar delta) {
  check_rho_users(static_cast<double>(rho), k_users);
  const Scalar t = Scalar(tau);
  const Scalar denom = t + delta;
  if (std::abs(denom) <= Scalar(1e-12) * t) {
    throw DegeneratePilotError("upsilon: tau + delta vanishes for this pilot");
  }
  const Scalar gain = rho * Scalar(k_users) + Scalar(1);
  return Scalar(2) / Scalar(kPi) * rho / (gain * gain) * (t * t) / (denom * denom);
}

template <typename Scalar>
EstimationConstants<Scalar> estimation_constants(const PilotMatrix<Scalar>& pilots, Scalar rho) {
  const Scalar delta = delta_general(pilots, rho);
  return {delta, upsilon(rho, static_cast<int>(pilots.k_users()), pilots.tau(), delta)};
}

/// Scaled least-squares estimate sqrt(upsilon) R_p P (M x K).
template <typename Scalar>
CMatrix<Scalar> estimate_channel(const QuantizedMatrix<Scalar>& received_pilots,
                                 const PilotMatrix<Scalar>& pilots,
                                 const EstimationConstants<Scalar>& constants) {
  if (received_pilots.cols() != pilots.tau()) {
    std::ostringstream msg;
    msg << "estimate_channel: received pilots have " << received_pilots.cols()
        << " columns, pilot length is " << pilots.tau();
    throw DimensionError(msg.str());
  }
  CMatrix<Scalar> h_hat = received_pilots.entries().lazyProduct(pilots.entries());
  h_hat *= std::sqrt(constants.upsilon);
  return h_hat;
}

using Pilotd = Pilot<double>;
using PilotMatrixd = PilotMatrix<double>;
using EstimationConstantsd = EstimationConstants<double>;

} // namespace onebit
