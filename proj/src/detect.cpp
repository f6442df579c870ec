#include "onebit/detect.hpp"

#include <algorithm>
#include <cmath>

#include "onebit/csv.hpp"

namespace onebit {

std::vector<double> make_weights(const std::vector<double>& variances, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    std::ostringstream msg;
    msg << "alpha " << alpha << " outside [0, 1]";
    throw ConfigError(msg.str());
  }
  std::vector<double> weights;
  weights.reserve(variances.size());
  for (double v : variances) {
    const double denom = 1.0 + alpha * (v - 1.0);
    if (!(denom > 0.0)) {
      throw ConfigError("make_weights: non-positive weight denominator");
    }
    weights.push_back(1.0 / denom);
  }
  return weights;
}

DetectorSpec::DetectorSpec(std::vector<cdouble> centers, std::vector<double> weights,
                           double alpha)
    : centers_(std::move(centers)), weights_(std::move(weights)), alpha_(alpha) {
  if (centers_.empty() || centers_.size() != weights_.size()) {
    throw DimensionError("DetectorSpec: need one positive weight per center");
  }
  if (!(alpha_ >= 0.0 && alpha_ <= 1.0)) {
    throw ConfigError("DetectorSpec: alpha outside [0, 1]");
  }
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ConfigError("DetectorSpec: weights must be positive and finite");
    }
    if (alpha_ == 0.0 && w != 1.0) {
      throw ConfigError("DetectorSpec: alpha = 0 requires unit weights");
    }
  }
}

DetectorSpec detector_spec(const MomentTable& table, double alpha) {
  return DetectorSpec(table.expected, make_weights(table.variance, alpha), alpha);
}

RegionGrid default_region_grid(const DetectorSpec& spec, int resolution) {
  double largest = 0.0;
  for (const auto& e : spec.centers()) largest = std::max(largest, std::abs(e));
  return RegionGrid{{0.0, 0.0}, 1.5 * largest, resolution};
}

std::vector<RegionSample> rasterize_regions(const DetectorSpec& spec, const RegionGrid& grid) {
  if (grid.resolution < 1 || !(grid.half_width > 0.0)) {
    throw ConfigError("rasterize_regions: grid needs positive resolution and extent");
  }
  const int n = grid.resolution;
  const double step = 2.0 * grid.half_width / n;
  const double x0 = grid.center.real() - grid.half_width + 0.5 * step;
  const double y0 = grid.center.imag() - grid.half_width + 0.5 * step;
  std::vector<RegionSample> samples;
  samples.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const cdouble point(x0 + ix * step, y0 + iy * step);
      samples.push_back({point, detect(point, spec)});
    }
  }
  return samples;
}

void write_region_csv(std::ostream& out, const std::vector<RegionSample>& samples) {
  CsvWriter csv(out, {"re", "im", "decided_index"});
  for (const auto& s : samples) {
    csv.row(s.point.real(), s.point.imag(), s.decided);
  }
}

} // namespace onebit
