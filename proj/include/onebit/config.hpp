#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "onebit/constellation.hpp"
#include "onebit/types.hpp"

namespace onebit {

enum class Sweep { kSnr, kTau, kAlpha, kScatter, kMoments, kRegions };

Sweep sweep_from_name(const std::string& name);
std::string sweep_name(Sweep sweep);

/// Scenario parameters for one experiment. Grid-valued fields hold one or
/// more values; which of them may be lists depends on the sweep.
struct SimConfig {
  int m_antennas = 128;
  std::vector<int> tau{32};
  std::vector<double> snr_db{10.0};
  std::vector<double> alpha{0.0};
  Constellation constellation = qam16();
  // Explicit single-user pilot; empty means the second DFT column of length tau.
  std::vector<cdouble> pilot;
  std::int64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  int threads = 0;  // 0: one per hardware thread
  Sweep sweep = Sweep::kSnr;
  int region_resolution = 512;
  std::optional<double> region_half_width;
};

// Applies one `key = value` setting. Lists are comma separated; complex values
// are written `re:im`. Throws ConfigError on unknown keys or malformed values.
void apply_setting(SimConfig& config, const std::string& key, const std::string& value);

// Parses flat `key = value` text (`#` starts a comment) on top of `config`.
void apply_config_text(SimConfig& config, const std::string& text);

void apply_config_file(SimConfig& config, const std::string& path);

// Checks the invariants required by config.sweep; throws ConfigError.
void validate(const SimConfig& config);

} // namespace onebit
