#include "onebit/moments.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include "onebit/csv.hpp"
#include "onebit/errors.hpp"

namespace onebit {
namespace detail {

void warn_variance_floor(double raw) {
  std::clog << "warning: symbol variance " << raw << " floored to 0\n";
}

void throw_negative_variance(double raw) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "symbol variance evaluated to " << raw;
  throw InternalInconsistency(msg.str());
}

} // namespace detail

AsymptoticMoments asymptotic_moments(const Constellation& constellation, const Pilotd& pilot,
                                     Eigen::Index m_antennas) {
  AsymptoticMoments out;
  out.delta_bar = delta_high_snr(pilot);
  const double tau = static_cast<double>(pilot.tau());
  const double gain =
      std::sqrt(2.0 / kPi) * static_cast<double>(m_antennas) * tau / (tau + out.delta_bar);
  const double power = symbol_power(1.0, m_antennas, pilot.tau(), out.delta_bar);
  for (const cdouble& s : constellation.symbols()) {
    const double mag = std::abs(s);
    if (mag == 0.0) {
      throw DomainError("asymptotic_moments: symbol at the origin has no phase");
    }
    // s / |s| through the phase alone, so symbols sharing a phase give
    // bit-identical arcsine arguments (some of which sit at +-1).
    const cdouble unit = std::polar(1.0, std::arg(s));
    CompensatedSum<cdouble> acc;
    for (Eigen::Index u = 0; u < pilot.tau(); ++u) {
      const cdouble ps = pilot(u) * unit;
      acc.add(std::conj(pilot(u)) * cdouble(omega(ps.real()), omega(ps.imag())));
    }
    const cdouble e = gain * acc.value();
    out.expected_scaled.push_back(e);
    out.variance_scaled.push_back(power - std::norm(e) / static_cast<double>(m_antennas));
  }
  return out;
}

MomentTable moment_table(const Constellation& constellation, const Pilotd& pilot, double rho,
                         Eigen::Index m_antennas) {
  if (m_antennas < 1) {
    throw ConfigError("moment_table: number of antennas must be positive");
  }
  MomentTable table;
  table.rho = rho;
  table.m_antennas = m_antennas;
  table.tau = pilot.tau();
  table.constants = estimation_constants(PilotMatrixd(pilot), rho);
  table.symbols = constellation.symbols();
  for (const cdouble& s : table.symbols) {
    const cdouble e = expected_symbol(s, pilot, rho, m_antennas, table.constants.delta);
    table.expected.push_back(e);
    table.variance.push_back(
        symbol_variance_from_mean(e, rho, m_antennas, pilot.tau(), table.constants.delta));
  }
  if (power_identity_residual(table) > 1e-9) {
    throw InternalInconsistency("moment_table: variance/mean power identity violated");
  }
  return table;
}

double power_identity_residual(const MomentTable& table) {
  const double power =
      symbol_power(table.rho, table.m_antennas, table.tau, table.constants.delta);
  double worst = 0.0;
  for (std::size_t l = 0; l < table.size(); ++l) {
    const double lhs =
        table.variance[l] + std::norm(table.expected[l]) / static_cast<double>(table.m_antennas);
    worst = std::max(worst, std::abs(lhs - power) / std::abs(power));
  }
  return worst;
}

void write_moment_csv(std::ostream& out, const MomentTable& table) {
  CsvWriter csv(out, {"symbol_re", "symbol_im", "e_re", "e_im", "var"});
  for (std::size_t l = 0; l < table.size(); ++l) {
    csv.row(table.symbols[l].real(), table.symbols[l].imag(), table.expected[l].real(),
            table.expected[l].imag(), table.variance[l]);
  }
}

} // namespace onebit
