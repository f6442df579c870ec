#pragma once

#include "onebit/qmath.hpp"
#include "onebit/rng.hpp"
#include "onebit/types.hpp"

namespace onebit {

/// Rayleigh-fading uplink channel H (M x K), entries i.i.d. CN(0, 1).
struct ChannelRealization {
  CMatrixd h;

  Eigen::Index m_antennas() const { return h.rows(); }
  Eigen::Index k_users() const { return h.cols(); }
};

/// rows x cols matrix of i.i.d. CN(0, 1) entries, i.e. N(0, 1/2) + j N(0, 1/2).
CMatrixd sample_cn01(Eigen::Index rows, Eigen::Index cols, RngStream& rng);

ChannelRealization sample_channel(Eigen::Index m_antennas, Eigen::Index k_users, RngStream& rng);

/// Data phase: Q(sqrt(rho) H x + z) with fresh unit-variance AWGN z (M x 1).
///
/// When `injected_noise` is non-null it is used as z instead of drawing from
/// `rng`; it must be M x 1.
QuantizedMatrix<double> uplink_data_rx(const ChannelRealization& channel, const CVectord& x,
                                       double rho, RngStream& rng,
                                       const CMatrixd* injected_noise = nullptr);

/// Pilot phase: Q(sqrt(rho) H P^H + Z_p) for a tau x K pilot matrix P (M x tau).
///
/// Pilot entries must have unit modulus. `injected_noise`, when given, must be M x tau.
QuantizedMatrix<double> uplink_pilot_rx(const ChannelRealization& channel, const CMatrixd& pilots,
                                        double rho, RngStream& rng,
                                        const CMatrixd* injected_noise = nullptr);

} // namespace onebit
