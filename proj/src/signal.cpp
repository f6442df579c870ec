#include "onebit/signal.hpp"

#include <cmath>
#include <sstream>

#include <boost/random/normal_distribution.hpp>

#include "onebit/errors.hpp"

namespace onebit {
namespace {

constexpr double kPilotModulusTol = 1e-12;

// Adds CN(0, 1) noise to every entry of `y` in column-major order.
void add_cn01(CMatrixd& y, RngStream& rng) {
  boost::random::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const Eigen::Index n = y.size();
  cdouble* data = y.data();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    data[i] += cdouble(re, im);
  }
}

void add_noise(CMatrixd& y, RngStream& rng, const CMatrixd* injected, const char* what) {
  if (injected == nullptr) {
    add_cn01(y, rng);
    return;
  }
  if (injected->rows() != y.rows() || injected->cols() != y.cols()) {
    std::ostringstream msg;
    msg << what << ": injected noise is " << injected->rows() << "x" << injected->cols()
        << ", expected " << y.rows() << "x" << y.cols();
    throw DimensionError(msg.str());
  }
  y += *injected;
}

} // namespace

CMatrixd sample_cn01(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
  if (rows < 1 || cols < 1) {
    throw DimensionError("sample_cn01: rows and cols must be positive");
  }
  CMatrixd out = CMatrixd::Zero(rows, cols);
  add_cn01(out, rng);
  return out;
}

ChannelRealization sample_channel(Eigen::Index m_antennas, Eigen::Index k_users, RngStream& rng) {
  return ChannelRealization{sample_cn01(m_antennas, k_users, rng)};
}

QuantizedMatrix<double> uplink_data_rx(const ChannelRealization& channel, const CVectord& x,
                                       double rho, RngStream& rng,
                                       const CMatrixd* injected_noise) {
  check_rho_users(rho, static_cast<int>(channel.k_users()));
  if (x.size() != channel.k_users()) {
    std::ostringstream msg;
    msg << "uplink_data_rx: channel has " << channel.k_users() << " users but x has "
        << x.size() << " entries";
    throw DimensionError(msg.str());
  }
  CMatrixd y = std::sqrt(rho) * (channel.h * x);
  add_noise(y, rng, injected_noise, "uplink_data_rx");
  return quantize(y, rho, static_cast<int>(channel.k_users()));
}

QuantizedMatrix<double> uplink_pilot_rx(const ChannelRealization& channel, const CMatrixd& pilots,
                                        double rho, RngStream& rng,
                                        const CMatrixd* injected_noise) {
  check_rho_users(rho, static_cast<int>(channel.k_users()));
  if (pilots.cols() != channel.k_users() || pilots.rows() < 1) {
    std::ostringstream msg;
    msg << "uplink_pilot_rx: pilot matrix is " << pilots.rows() << "x" << pilots.cols()
        << " but channel has " << channel.k_users() << " users";
    throw DimensionError(msg.str());
  }
  for (Eigen::Index i = 0; i < pilots.size(); ++i) {
    if (std::abs(std::abs(pilots.data()[i]) - 1.0) > kPilotModulusTol) {
      throw ConfigError("uplink_pilot_rx: pilot entries must have unit modulus");
    }
  }
  // sqrt(rho) H P^H, one pilot symbol (column of Y_p) at a time; K is small.
  const Eigen::Index m = channel.m_antennas();
  const Eigen::Index k_users = channel.k_users();
  const double gain = std::sqrt(rho);
  CMatrixd y(m, pilots.rows());
  for (Eigen::Index u = 0; u < pilots.rows(); ++u) {
    auto col = y.col(u);
    col = (gain * std::conj(pilots(u, 0))) * channel.h.col(0);
    for (Eigen::Index k = 1; k < k_users; ++k) {
      col += (gain * std::conj(pilots(u, k))) * channel.h.col(k);
    }
  }
  add_noise(y, rng, injected_noise, "uplink_pilot_rx");
  return quantize(y, rho, static_cast<int>(channel.k_users()));
}

} // namespace onebit
