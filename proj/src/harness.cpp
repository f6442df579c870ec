#include "onebit/harness.hpp"

#include <cmath>
#include <ostream>

#include <boost/random/uniform_int_distribution.hpp>

#include "onebit/csv.hpp"
#include "onebit/errors.hpp"
#include "onebit/parallel.hpp"
#include "onebit/rng.hpp"
#include "onebit/signal.hpp"

namespace onebit {

Scenario::Scenario(Constellation constellation, Pilotd pilot, OperatingPoint point,
                   std::uint64_t seed)
    : constellation_(std::move(constellation)),
      pilot_(std::move(pilot)),
      pilot_matrix_(pilot_),
      point_(point),
      rho_(db_to_linear(point.snr_db)),
      seed_(seed),
      moments_(moment_table(constellation_, pilot_, rho_, point.m_antennas)),
      detector_(detector_spec(moments_, point.alpha)) {
  if (pilot_.tau() != point.tau) {
    throw ConfigError("scenario: pilot length does not match tau");
  }
}

Pilotd make_pilot(const SimConfig& config, int tau) {
  if (config.pilot.empty()) return dft_pilot<double>(tau);
  CVectord p(static_cast<Eigen::Index>(config.pilot.size()));
  for (std::size_t u = 0; u < config.pilot.size(); ++u) {
    p(static_cast<Eigen::Index>(u)) = config.pilot[u];
  }
  return Pilotd(std::move(p));
}

Scenario make_scenario(const SimConfig& config, const OperatingPoint& point) {
  if (!config.seed) throw ConfigError("a seed is required");
  return Scenario(config.constellation, make_pilot(config, point.tau), point, *config.seed);
}

cdouble estimate_symbol(const Scenario& scenario, std::size_t symbol_index,
                        std::uint64_t trial_id) {
  const std::uint64_t seed = scenario.seed();
  const double rho = scenario.rho();

  RngStream channel_rng(seed, trial_id, Substream::kChannel);
  const ChannelRealization channel =
      sample_channel(scenario.point().m_antennas, 1, channel_rng);

  RngStream pilot_rng(seed, trial_id, Substream::kPilotNoise);
  const auto received_pilots =
      uplink_pilot_rx(channel, scenario.pilot_matrix().entries(), rho, pilot_rng);
  const CMatrixd h_hat = estimate_channel(received_pilots, scenario.pilot_matrix(),
                                          scenario.moments().constants);

  CVectord x(1);
  x(0) = scenario.constellation()[symbol_index];
  RngStream data_rng(seed, trial_id, Substream::kDataNoise);
  const auto r = uplink_data_rx(channel, x, rho, data_rng);
  return mrc_estimate(h_hat, r)(0);
}

std::size_t draw_symbol(const Scenario& scenario, std::uint64_t trial_id) {
  RngStream rng(scenario.seed(), trial_id, Substream::kSymbol);
  boost::random::uniform_int_distribution<std::size_t> pick(0, scenario.constellation().size() - 1);
  return pick(rng);
}

TrialOutcome run_trial_with_symbol(const Scenario& scenario, std::size_t symbol_index,
                                   std::uint64_t trial_id) {
  const cdouble xhat = estimate_symbol(scenario, symbol_index, trial_id);
  return {symbol_index, detect(xhat, scenario.detector())};
}

TrialOutcome run_trial(const Scenario& scenario, std::uint64_t trial_id) {
  return run_trial_with_symbol(scenario, draw_symbol(scenario, trial_id), trial_id);
}

SerResult make_ser_result(const OperatingPoint& point, std::int64_t errors, std::int64_t trials) {
  SerResult r;
  r.point = point;
  r.errors = errors;
  r.trials = trials;
  r.ser = static_cast<double>(errors) / static_cast<double>(trials);
  r.std_err = std::sqrt(r.ser * (1.0 - r.ser) / static_cast<double>(trials));
  return r;
}

SerResult simulate_ser(const Scenario& scenario, std::int64_t trials, int threads) {
  const auto partials = map_blocks<std::int64_t>(
      static_cast<std::uint64_t>(trials), threads,
      [&](std::uint64_t begin, std::uint64_t end) {
        std::int64_t errors = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
          errors += run_trial(scenario, t).error() ? 1 : 0;
        }
        return errors;
      });
  std::int64_t errors = 0;
  for (auto e : partials) errors += e;
  return make_ser_result(scenario.point(), errors, trials);
}

std::vector<SerResult> run_ser(const SimConfig& config) {
  validate(config);
  std::vector<SerResult> results;
  for (int tau : config.tau) {
    for (double snr_db : config.snr_db) {
      const OperatingPoint point{config.m_antennas, tau, snr_db, config.alpha.front()};
      const Scenario scenario = make_scenario(config, point);
      results.push_back(simulate_ser(scenario, config.trials, config.threads));
    }
  }
  return results;
}

std::vector<SerResult> run_alpha_sweep(const SimConfig& config) {
  SimConfig single = config;
  single.sweep = Sweep::kAlpha;
  validate(single);
  const OperatingPoint base{config.m_antennas, config.tau.front(), config.snr_db.front(), 0.0};
  const Scenario scenario = make_scenario(config, base);

  std::vector<DetectorSpec> detectors;
  for (double a : config.alpha) detectors.push_back(detector_spec(scenario.moments(), a));

  using Counts = std::vector<std::int64_t>;
  const auto partials = map_blocks<Counts>(
      static_cast<std::uint64_t>(config.trials), config.threads,
      [&](std::uint64_t begin, std::uint64_t end) {
        Counts errors(detectors.size(), 0);
        for (std::uint64_t t = begin; t < end; ++t) {
          const std::size_t sent = draw_symbol(scenario, t);
          const cdouble xhat = estimate_symbol(scenario, sent, t);
          for (std::size_t a = 0; a < detectors.size(); ++a) {
            if (detect(xhat, detectors[a]) != sent) ++errors[a];
          }
        }
        return errors;
      });

  Counts totals(detectors.size(), 0);
  for (const auto& p : partials) {
    for (std::size_t a = 0; a < totals.size(); ++a) totals[a] += p[a];
  }
  std::vector<SerResult> results;
  for (std::size_t a = 0; a < detectors.size(); ++a) {
    OperatingPoint point = base;
    point.alpha = config.alpha[a];
    results.push_back(make_ser_result(point, totals[a], config.trials));
  }
  return results;
}

ScatterResult run_scatter(const SimConfig& config) {
  SimConfig single = config;
  single.sweep = Sweep::kScatter;
  validate(single);
  const OperatingPoint point{config.m_antennas, config.tau.front(), config.snr_db.front(),
                             config.alpha.front()};
  const Scenario scenario = make_scenario(config, point);
  const auto trials = static_cast<std::uint64_t>(config.trials);
  const std::uint64_t total = trials * scenario.constellation().size();

  const auto partials = map_blocks<std::vector<ScatterPoint>>(
      total, config.threads, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<ScatterPoint> rows;
        rows.reserve(end - begin);
        for (std::uint64_t id = begin; id < end; ++id) {
          const std::size_t l = id / trials;
          rows.push_back({l, estimate_symbol(scenario, l, id)});
        }
        return rows;
      });

  ScatterResult result{{}, scenario.moments()};
  result.points.reserve(total);
  for (const auto& p : partials) result.points.insert(result.points.end(), p.begin(), p.end());
  return result;
}

SymbolStats symbol_statistics(const Scenario& scenario, std::size_t symbol_index,
                              std::int64_t trials, int threads) {
  // Moments are accumulated about the analytic mean, which keeps the sums
  // well conditioned; the fourth moment about it stands in for the central one.
  const cdouble shift = scenario.moments().expected.at(symbol_index);
  struct Sums {
    cdouble d{};
    double d2 = 0.0;
    double d4 = 0.0;
  };
  const std::uint64_t offset = static_cast<std::uint64_t>(symbol_index) *
                               static_cast<std::uint64_t>(trials);
  const auto partials = map_blocks<Sums>(
      static_cast<std::uint64_t>(trials), threads, [&](std::uint64_t begin, std::uint64_t end) {
        Sums s;
        for (std::uint64_t t = begin; t < end; ++t) {
          const cdouble d = estimate_symbol(scenario, symbol_index, offset + t) - shift;
          const double n2 = std::norm(d);
          s.d += d;
          s.d2 += n2;
          s.d4 += n2 * n2;
        }
        return s;
      });
  Sums total;
  for (const auto& p : partials) {
    total.d += p.d;
    total.d2 += p.d2;
    total.d4 += p.d4;
  }
  const double n = static_cast<double>(trials);
  const cdouble mean_d = total.d / n;
  SymbolStats stats;
  stats.trials = trials;
  stats.mean = shift + mean_d;
  stats.variance = (total.d2 / n - std::norm(mean_d)) * n / std::max(1.0, n - 1.0);
  stats.mean_se = std::sqrt(stats.variance / n);
  const double m4 = total.d4 / n;
  stats.variance_se = std::sqrt(std::max(0.0, m4 - stats.variance * stats.variance) / n);
  return stats;
}

RegionExport run_regions(const SimConfig& config) {
  SimConfig single = config;
  single.sweep = Sweep::kRegions;
  validate(single);
  const OperatingPoint point{config.m_antennas, config.tau.front(), config.snr_db.front(),
                             config.alpha.front()};
  const MomentTable table = moment_table(config.constellation, make_pilot(config, point.tau),
                                         db_to_linear(point.snr_db), point.m_antennas);
  const DetectorSpec spec = detector_spec(table, point.alpha);
  RegionGrid grid = default_region_grid(spec, config.region_resolution);
  if (config.region_half_width) grid.half_width = *config.region_half_width;
  return {grid, rasterize_regions(spec, grid)};
}

void write_ser_csv(std::ostream& out, const std::vector<SerResult>& results) {
  CsvWriter csv(out, {"m_antennas", "tau", "snr_db", "alpha", "errors", "trials", "ser",
                      "std_err"});
  for (const auto& r : results) {
    csv.row(r.point.m_antennas, r.point.tau, r.point.snr_db, r.point.alpha, r.errors, r.trials,
            r.ser, r.std_err);
  }
}

void write_scatter_csv(std::ostream& out, const ScatterResult& result) {
  CsvWriter csv(out, {"index", "xhat_re", "xhat_im"});
  for (const auto& p : result.points) {
    csv.row(p.index, p.xhat.real(), p.xhat.imag());
  }
}

void write_scatter_expected_csv(std::ostream& out, const ScatterResult& result) {
  CsvWriter csv(out, {"index", "symbol_re", "symbol_im", "e_re", "e_im"});
  const auto& m = result.moments;
  for (std::size_t l = 0; l < m.size(); ++l) {
    csv.row(l, m.symbols[l].real(), m.symbols[l].imag(), m.expected[l].real(),
            m.expected[l].imag());
  }
}

} // namespace onebit
