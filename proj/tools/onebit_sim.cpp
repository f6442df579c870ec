// Batch driver for the 1-bit massive MIMO uplink experiments. Every
// subcommand writes CSV to --out (or stdout).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "onebit/config.hpp"
#include "onebit/errors.hpp"
#include "onebit/harness.hpp"
#include "onebit/moments.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<int> threads;
  std::string out;
  std::string expected_out;
  std::optional<std::string> m_antennas;
  std::optional<std::string> tau;
  std::optional<std::string> snr_db;
  std::optional<std::string> alpha;
  std::optional<std::string> constellation;
  std::optional<std::string> pilot;
  std::vector<std::string> settings;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Flat key = value config file");
  cmd->add_option("--seed", o.seed, "Master seed (u64)");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per point (per symbol for scatter)");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all hardware threads)");
  cmd->add_option("--out", o.out, "Output CSV path (default: stdout)");
  cmd->add_option("--m-antennas", o.m_antennas, "Number of BS antennas");
  cmd->add_option("--tau", o.tau, "Pilot length(s), comma separated");
  cmd->add_option("--snr-db", o.snr_db, "Transmit SNR(s) in dB, comma separated");
  cmd->add_option("--alpha", o.alpha, "Detector weighting exponent(s) in [0, 1]");
  cmd->add_option("--constellation", o.constellation, "qam16 or qpsk");
  cmd->add_option("--pilot", o.pilot, "dft2 or an explicit list re:im,...");
  cmd->add_option("--set", o.settings, "Extra key=value overrides")->take_all();
}

onebit::SimConfig build_config(const CommonOptions& o, onebit::Sweep sweep) {
  onebit::SimConfig config;
  if (!o.config_path.empty()) onebit::apply_config_file(config, o.config_path);
  for (const auto& kv : o.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw onebit::ConfigError("--set expects key=value, got '" + kv + "'");
    onebit::apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.m_antennas) onebit::apply_setting(config, "m_antennas", *o.m_antennas);
  if (o.tau) onebit::apply_setting(config, "tau", *o.tau);
  if (o.snr_db) onebit::apply_setting(config, "snr_db", *o.snr_db);
  if (o.alpha) onebit::apply_setting(config, "alpha", *o.alpha);
  if (o.constellation) onebit::apply_setting(config, "constellation", *o.constellation);
  if (o.pilot) onebit::apply_setting(config, "pilot", *o.pilot);
  if (o.seed) config.seed = *o.seed;
  if (o.trials) config.trials = *o.trials;
  if (o.threads) config.threads = *o.threads;
  config.sweep = sweep;
  onebit::validate(config);
  if (!config.seed && sweep != onebit::Sweep::kMoments && sweep != onebit::Sweep::kRegions) {
    throw onebit::ConfigError("a seed is required (--seed or 'seed = ...')");
  }
  return config;
}

template <typename WriteFn>
void emit(const std::string& path, WriteFn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) throw onebit::ConfigError("cannot open output '" + path + "'");
  write(file);
}

std::string expected_path_for(const std::string& out) {
  std::filesystem::path p(out);
  const auto stem = p.stem().string();
  return (p.parent_path() / (stem + "_expected.csv")).string();
}

void run(onebit::Sweep sweep, const CommonOptions& o) {
  const onebit::SimConfig config = build_config(o, sweep);
  using onebit::Sweep;
  switch (sweep) {
    case Sweep::kMoments: {
      const auto table = onebit::moment_table(
          config.constellation, onebit::make_pilot(config, config.tau.front()),
          onebit::db_to_linear(config.snr_db.front()), config.m_antennas);
      emit(o.out, [&](std::ostream& os) { onebit::write_moment_csv(os, table); });
      break;
    }
    case Sweep::kSnr:
    case Sweep::kTau: {
      const auto results = onebit::run_ser(config);
      emit(o.out, [&](std::ostream& os) { onebit::write_ser_csv(os, results); });
      break;
    }
    case Sweep::kAlpha: {
      const auto results = onebit::run_alpha_sweep(config);
      emit(o.out, [&](std::ostream& os) { onebit::write_ser_csv(os, results); });
      break;
    }
    case Sweep::kScatter: {
      const auto result = onebit::run_scatter(config);
      emit(o.out, [&](std::ostream& os) { onebit::write_scatter_csv(os, result); });
      std::string expected = o.expected_out;
      if (expected.empty() && !o.out.empty() && o.out != "-") expected = expected_path_for(o.out);
      if (expected.empty()) {
        std::cout << '\n';
        onebit::write_scatter_expected_csv(std::cout, result);
      } else {
        emit(expected, [&](std::ostream& os) { onebit::write_scatter_expected_csv(os, result); });
      }
      break;
    }
    case Sweep::kRegions: {
      const auto regions = onebit::run_regions(config);
      emit(o.out, [&](std::ostream& os) { onebit::write_region_csv(os, regions.samples); });
      break;
    }
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-bit ADC massive MIMO uplink: moments, detection and SER experiments"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
    onebit::Sweep sweep;
  };
  const std::vector<Entry> entries = {
      {"moments", "Closed-form mean and variance of every symbol estimate", onebit::Sweep::kMoments},
      {"ser-vs-snr", "SER over the snr_db grid", onebit::Sweep::kSnr},
      {"ser-vs-tau", "SER over the tau grid", onebit::Sweep::kTau},
      {"ser-vs-alpha", "SER over the alpha grid (common random numbers)", onebit::Sweep::kAlpha},
      {"scatter", "Estimated symbols for every constellation point", onebit::Sweep::kScatter},
      {"regions", "Rasterized decision regions", onebit::Sweep::kRegions},
  };

  std::vector<CommonOptions> options(entries.size());
  std::vector<CLI::App*> commands;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto* cmd = app.add_subcommand(entries[i].name, entries[i].help);
    add_common(cmd, options[i]);
    if (entries[i].sweep == onebit::Sweep::kScatter) {
      cmd->add_option("--expected-out", options[i].expected_out,
                      "Analytic overlay CSV (default: <out stem>_expected.csv)");
    }
    commands.push_back(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (commands[i]->parsed()) run(entries[i].sweep, options[i]);
    }
  } catch (const onebit::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
