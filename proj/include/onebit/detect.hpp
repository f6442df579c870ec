#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <sstream>
#include <vector>

#include "onebit/errors.hpp"
#include "onebit/moments.hpp"
#include "onebit/qmath.hpp"
#include "onebit/types.hpp"

namespace onebit {

/// MRC soft estimate x_hat = H_hat^H r (K values).
template <typename Scalar>
CVector<Scalar> mrc_estimate(const CMatrix<Scalar>& h_hat, const QuantizedMatrix<Scalar>& r) {
  if (r.cols() != 1 || r.rows() != h_hat.rows()) {
    std::ostringstream msg;
    msg << "mrc_estimate: H_hat is " << h_hat.rows() << "x" << h_hat.cols()
        << " but r is " << r.rows() << "x" << r.cols();
    throw DimensionError(msg.str());
  }
  return h_hat.adjoint() * r.entries().col(0);
}

/// omega_l = 1 / (1 + alpha (V_l - 1)); alpha = 0 yields unit weights.
std::vector<double> make_weights(const std::vector<double>& variances, double alpha);

/// Decision rule: centers E_l with multiplicative weights omega_l.
class DetectorSpec {
 public:
  DetectorSpec(std::vector<cdouble> centers, std::vector<double> weights, double alpha);

  const std::vector<cdouble>& centers() const { return centers_; }
  const std::vector<double>& weights() const { return weights_; }
  double alpha() const { return alpha_; }
  std::size_t size() const { return centers_.size(); }

 private:
  std::vector<cdouble> centers_;
  std::vector<double> weights_;
  double alpha_;
};

// Detector over a moment table with weights from its variances.
DetectorSpec detector_spec(const MomentTable& table, double alpha);

/// Index l minimizing omega_l |x_hat - E_l|; ties go to the lowest index.
inline std::size_t detect(cdouble xhat, const DetectorSpec& spec) {
  std::size_t best = 0;
  double best_metric = std::numeric_limits<double>::infinity();
  const auto& centers = spec.centers();
  const auto& weights = spec.weights();
  for (std::size_t l = 0; l < centers.size(); ++l) {
    const double metric = weights[l] * std::abs(xhat - centers[l]);
    if (metric < best_metric) {
      best_metric = metric;
      best = l;
    }
  }
  return best;
}

/// Square raster of the complex plane used to export decision regions.
struct RegionGrid {
  cdouble center{0.0, 0.0};
  double half_width = 0.0;
  int resolution = 512;
};

// Square centered at the origin covering 1.5x the largest |E_l|.
RegionGrid default_region_grid(const DetectorSpec& spec, int resolution = 512);

struct RegionSample {
  cdouble point;
  std::size_t decided;
};

// Cell-center samples, row by row from the bottom-left corner.
std::vector<RegionSample> rasterize_regions(const DetectorSpec& spec, const RegionGrid& grid);

// CSV with header `re,im,decided_index`.
void write_region_csv(std::ostream& out, const std::vector<RegionSample>& samples);

} // namespace onebit
