#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "onebit/chest.hpp"
#include "onebit/config.hpp"
#include "onebit/constellation.hpp"
#include "onebit/detect.hpp"
#include "onebit/moments.hpp"

namespace onebit {

struct OperatingPoint {
  int m_antennas = 128;
  int tau = 32;
  double snr_db = 10.0;
  double alpha = 0.0;
};

/// Everything a trial needs at one operating point, precomputed once and
/// shared read-only between worker threads.
class Scenario {
 public:
  Scenario(Constellation constellation, Pilotd pilot, OperatingPoint point, std::uint64_t seed);

  const Constellation& constellation() const { return constellation_; }
  const Pilotd& pilot() const { return pilot_; }
  const PilotMatrixd& pilot_matrix() const { return pilot_matrix_; }
  const OperatingPoint& point() const { return point_; }
  const MomentTable& moments() const { return moments_; }
  const DetectorSpec& detector() const { return detector_; }
  double rho() const { return rho_; }
  std::uint64_t seed() const { return seed_; }

 private:
  Constellation constellation_;
  Pilotd pilot_;
  PilotMatrixd pilot_matrix_;
  OperatingPoint point_;
  double rho_;
  std::uint64_t seed_;
  MomentTable moments_;
  DetectorSpec detector_;
};

// Explicit pilot from the config, or the second DFT column of length `tau`.
Pilotd make_pilot(const SimConfig& config, int tau);

Scenario make_scenario(const SimConfig& config, const OperatingPoint& point);

/// One pass of the uplink chain for a fixed transmitted symbol: channel draw,
/// quantized pilots, scaled LS estimate, quantized data, MRC. Returns x_hat.
cdouble estimate_symbol(const Scenario& scenario, std::size_t symbol_index,
                        std::uint64_t trial_id);

// Uniform symbol index drawn from the trial's symbol substream.
std::size_t draw_symbol(const Scenario& scenario, std::uint64_t trial_id);

struct TrialOutcome {
  std::size_t transmitted = 0;
  std::size_t detected = 0;

  bool error() const { return transmitted != detected; }
  bool operator==(const TrialOutcome&) const = default;
};

/// Full trial: uniform symbol, estimate, weighted detection.
TrialOutcome run_trial(const Scenario& scenario, std::uint64_t trial_id);

// Same as run_trial but with the transmitted symbol forced.
TrialOutcome run_trial_with_symbol(const Scenario& scenario, std::size_t symbol_index,
                                   std::uint64_t trial_id);

struct SerResult {
  OperatingPoint point;
  std::int64_t errors = 0;
  std::int64_t trials = 0;
  double ser = 0.0;
  double std_err = 0.0;
};

SerResult make_ser_result(const OperatingPoint& point, std::int64_t errors, std::int64_t trials);

// Error count over trial ids [0, trials) at one scenario.
SerResult simulate_ser(const Scenario& scenario, std::int64_t trials, int threads);

/// SER over the snr_db x tau grid (tau-major) at alpha[0].
std::vector<SerResult> run_ser(const SimConfig& config);

/// SER for every alpha at a single (snr, tau): each trial's estimate is
/// computed once and detected under every alpha (common random numbers).
std::vector<SerResult> run_alpha_sweep(const SimConfig& config);

struct ScatterPoint {
  std::size_t index;
  cdouble xhat;
};

struct ScatterResult {
  std::vector<ScatterPoint> points;  // L * trials rows, symbol-major
  MomentTable moments;
};

/// `trials` independent estimates for every symbol of the constellation.
ScatterResult run_scatter(const SimConfig& config);

/// Monte Carlo statistics of x_hat for one symbol.
struct SymbolStats {
  cdouble mean;
  double variance = 0.0;     // total variance E|x_hat - mean|^2
  double mean_se = 0.0;      // sqrt(variance / n): standard error of the complex mean
  double variance_se = 0.0;  // CLT standard error of the sample variance
  std::int64_t trials = 0;
};

SymbolStats symbol_statistics(const Scenario& scenario, std::size_t symbol_index,
                              std::int64_t trials, int threads);

struct RegionExport {
  RegionGrid grid;
  std::vector<RegionSample> samples;
};

RegionExport run_regions(const SimConfig& config);

void write_ser_csv(std::ostream& out, const std::vector<SerResult>& results);
void write_scatter_csv(std::ostream& out, const ScatterResult& result);
// Analytic overlay for a scatter run: `index,symbol_re,symbol_im,e_re,e_im`.
void write_scatter_expected_csv(std::ostream& out, const ScatterResult& result);

} // namespace onebit
