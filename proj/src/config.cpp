#include "onebit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "onebit/errors.hpp"

namespace onebit {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw ConfigError("invalid value '" + value + "' for key '" + key + "'");
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    bad_value(key, text);
  }
  if (used != text.size() || !std::isfinite(v)) bad_value(key, text);
  return v;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& text) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) bad_value(key, text);
  return v;
}

cdouble parse_complex(const std::string& key, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) bad_value(key, text);
  return {parse_double(key, trim(text.substr(0, colon))),
          parse_double(key, trim(text.substr(colon + 1)))};
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, const std::string& value, Parse parse) {
  const auto items = split_list(value);
  if (items.empty()) throw ConfigError("key '" + key + "' needs at least one value");
  std::vector<T> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(parse(key, item));
  return out;
}

void require_single(const std::string& key, std::size_t n, Sweep sweep) {
  if (n != 1) {
    throw ConfigError("'" + key + "' must be a single value for the " + sweep_name(sweep) +
                      " experiment");
  }
}

} // namespace

Sweep sweep_from_name(const std::string& name) {
  if (name == "snr") return Sweep::kSnr;
  if (name == "tau") return Sweep::kTau;
  if (name == "alpha") return Sweep::kAlpha;
  if (name == "scatter") return Sweep::kScatter;
  if (name == "moments") return Sweep::kMoments;
  if (name == "regions") return Sweep::kRegions;
  throw ConfigError("unknown sweep '" + name + "'");
}

std::string sweep_name(Sweep sweep) {
  switch (sweep) {
    case Sweep::kSnr: return "snr";
    case Sweep::kTau: return "tau";
    case Sweep::kAlpha: return "alpha";
    case Sweep::kScatter: return "scatter";
    case Sweep::kMoments: return "moments";
    case Sweep::kRegions: return "regions";
  }
  return "unknown";
}

void apply_setting(SimConfig& config, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (value.empty()) throw ConfigError("key '" + key + "' has no value");

  if (key == "m_antennas" || key == "m") {
    config.m_antennas = parse_int<int>(key, value);
  } else if (key == "tau") {
    config.tau = parse_list<int>(key, value, parse_int<int>);
  } else if (key == "snr_db") {
    config.snr_db = parse_list<double>(key, value, parse_double);
  } else if (key == "alpha") {
    config.alpha = parse_list<double>(key, value, parse_double);
  } else if (key == "constellation") {
    config.constellation = constellation_by_name(value);
  } else if (key == "symbols") {
    config.constellation =
        Constellation(parse_list<cdouble>(key, value, parse_complex), "custom");
  } else if (key == "pilot") {
    if (value == "dft2") {
      config.pilot.clear();
    } else {
      config.pilot = parse_list<cdouble>(key, value, parse_complex);
    }
  } else if (key == "trials") {
    config.trials = parse_int<std::int64_t>(key, value);
  } else if (key == "seed") {
    config.seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "threads") {
    config.threads = parse_int<int>(key, value);
  } else if (key == "sweep") {
    config.sweep = sweep_from_name(value);
  } else if (key == "region_resolution") {
    config.region_resolution = parse_int<int>(key, value);
  } else if (key == "region_half_width") {
    config.region_half_width = parse_double(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void apply_config_text(SimConfig& config, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(SimConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_text(config, text.str());
}

void validate(const SimConfig& config) {
  if (config.m_antennas < 1) throw ConfigError("m_antennas must be at least 1");
  if (config.tau.empty() || config.snr_db.empty() || config.alpha.empty()) {
    throw ConfigError("parameter grids must be nonempty");
  }
  for (int t : config.tau) {
    if (t < 1) throw ConfigError("tau must be at least the number of users (1)");
  }
  for (double a : config.alpha) {
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha values must lie in [0, 1]");
  }
  if (config.trials < 1) throw ConfigError("trials must be at least 1");
  if (config.threads < 0) throw ConfigError("threads must be nonnegative");
  if (config.region_resolution < 1) throw ConfigError("region_resolution must be positive");
  if (config.region_half_width && !(*config.region_half_width > 0.0)) {
    throw ConfigError("region_half_width must be positive");
  }
  if (!config.pilot.empty()) {
    if (config.tau.size() != 1 || static_cast<std::size_t>(config.tau[0]) != config.pilot.size()) {
      throw ConfigError("an explicit pilot fixes tau to its length");
    }
  }

  const Sweep s = config.sweep;
  if (s != Sweep::kSnr) require_single("snr_db", config.snr_db.size(), s);
  if (s != Sweep::kTau) require_single("tau", config.tau.size(), s);
  if (s != Sweep::kAlpha) require_single("alpha", config.alpha.size(), s);
}

} // namespace onebit
