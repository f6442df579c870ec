#include <random>
#include <sstream>

#include "doctest.h"
#include "onebit/detect.hpp"

using namespace onebit;

namespace {

QuantizedMatrix<double> column(std::initializer_list<cdouble> values) {
  CMatrixd m(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (const auto& v : values) m(i++, 0) = v;
  return QuantizedMatrix<double>(m, 1.0, 1);
}

// Independent nearest-center rule on squared distances.
std::size_t nearest(cdouble x, const std::vector<cdouble>& centers) {
  std::size_t best = 0;
  for (std::size_t l = 1; l < centers.size(); ++l) {
    if (std::norm(x - centers[l]) < std::norm(x - centers[best])) best = l;
  }
  return best;
}

} // namespace

TEST_CASE("mrc_estimate examples") {
  CMatrixd h(1, 1);
  h(0, 0) = 1.0;
  CHECK(mrc_estimate(h, column({{1, 1}}))(0) == cdouble(1, 1));
  h(0, 0) = cdouble(0, 1);
  CHECK(mrc_estimate(h, column({{1, 0}}))(0) == cdouble(0, -1));
  CMatrixd h2 = CMatrixd::Ones(2, 1);
  CHECK(mrc_estimate(h2, column({{1, 1}, {1, -1}}))(0) == cdouble(2, 0));
  CHECK_THROWS_AS(mrc_estimate(h2, column({{1, 1}})), DimensionError);
}

TEST_CASE("make_weights examples") {
  for (double w : make_weights({0.3, 5.0, 700.0}, 0.0)) CHECK(w == 1.0);
  CHECK(make_weights({2.0}, 1.0)[0] == 0.5);
  for (double a : {0.0, 0.25, 1.0}) CHECK(make_weights({1.0}, a)[0] == 1.0);
  CHECK_THROWS_AS(make_weights({1.0}, -0.1), ConfigError);
  CHECK_THROWS_AS(make_weights({1.0}, 1.5), ConfigError);
}

TEST_CASE("DetectorSpec invariants") {
  CHECK_THROWS_AS(DetectorSpec({1.0, -1.0}, {1.0, 0.0}, 0.5), ConfigError);
  CHECK_THROWS_AS(DetectorSpec({1.0, -1.0}, {1.0, 0.5}, 0.0), ConfigError);
  CHECK_THROWS_AS(DetectorSpec({1.0, -1.0}, {1.0}, 0.0), DimensionError);
}

TEST_CASE("detect examples") {
  const DetectorSpec spec({{1, 0}, {-1, 0}, {0, 2}}, {1.0, 1.0, 1.0}, 0.0);
  for (std::size_t l = 0; l < 3; ++l) CHECK(detect(spec.centers()[l], spec) == l);

  const DetectorSpec pm({{1, 0}, {-1, 0}}, {1.0, 1.0}, 0.0);
  CHECK(detect({0.9, 0.0}, pm) == 0);
  // Exact tie at the bisector goes to the lower index.
  CHECK(detect({0.0, 0.3}, pm) == 0);
}

TEST_CASE("weighted bisector between 1 and 3") {
  const DetectorSpec weighted({{1, 0}, {3, 0}}, {0.5, 1.0}, 1.0);
  const DetectorSpec plain({{1, 0}, {3, 0}}, {1.0, 1.0}, 0.0);
  // Between the plain bisector (2) and the weighted one (7/3) the decisions differ.
  CHECK(detect({2.2, 0.0}, weighted) == 0);
  CHECK(detect({2.2, 0.0}, plain) == 1);
  // Past 7/3 both rules pick center 3: 0.5 * 1.5 > 1 * 0.5.
  CHECK(detect({2.5, 0.0}, weighted) == 1);
  CHECK(detect({2.5, 0.0}, plain) == 1);

  // Locate the decision switch between the centers by scanning.
  double boundary = 0.0;
  const int steps = 2000000;
  for (int i = 0; i <= steps; ++i) {
    const double xi = 1.0 + 2.0 * i / steps;
    if (detect({xi, 0.0}, weighted) == 1) {
      boundary = xi;
      break;
    }
  }
  CHECK(boundary == doctest::Approx(7.0 / 3.0).epsilon(1e-5));
}

TEST_CASE("equal weights reduce to nearest neighbour") {
  const auto table = moment_table(qam16(), dft_pilot(32), 10.0, 128);
  const auto spec = detector_spec(table, 0.0);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> coord(-400.0, 400.0);
  int mismatches = 0;
  for (int i = 0; i < 100000; ++i) {
    const cdouble x(coord(gen), coord(gen));
    mismatches += detect(x, spec) != nearest(x, table.expected) ? 1 : 0;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("higher variance never shrinks a decision region") {
  const auto table = moment_table(qam16(), dft_pilot(32), db_to_linear(5.0), 128);
  const auto plain = detector_spec(table, 0.0);

  auto check_superset = [](const DetectorSpec& before, const DetectorSpec& after, std::size_t l) {
    const auto grid = default_region_grid(before, 512);
    const auto a = rasterize_regions(before, grid);
    const auto b = rasterize_regions(after, grid);
    std::size_t lost = 0, owned = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].decided == l) {
        ++owned;
        lost += b[i].decided != l ? 1 : 0;
      }
    }
    CHECK(owned > 0);
    CHECK(lost == 0);
  };

  // Inner symbols share the largest variance.
  const double vmax = *std::max_element(table.variance.begin(), table.variance.end());
  const auto enhanced = detector_spec(table, 1.0);
  for (std::size_t l = 0; l < table.size(); ++l) {
    if (table.variance[l] == vmax) check_superset(plain, enhanced, l);
  }

  // Strict maximum: bump one inner symbol above the rest.
  std::size_t inner = 0;
  while (table.variance[inner] != vmax) ++inner;
  auto variances = table.variance;
  variances[inner] *= 1.2;
  const DetectorSpec bumped(table.expected, make_weights(variances, 1.0), 1.0);
  check_superset(plain, bumped, inner);
}

TEST_CASE("quarter-turn rotation of the decision") {
  const auto q = qam16();
  const auto table = moment_table(q, dft_pilot(32), 10.0, 128);
  const cdouble j{0.0, 1.0};
  for (double alpha : {0.0, 0.01, 1.0}) {
    const auto spec = detector_spec(table, alpha);
    std::vector<cdouble> rotated_centers;
    for (const auto& e : spec.centers()) rotated_centers.push_back(j * e);
    const DetectorSpec rotated(rotated_centers, spec.weights(), alpha);

    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> coord(-400.0, 400.0);
    for (int i = 0; i < 20000; ++i) {
      const cdouble x(coord(gen), coord(gen));
      const std::size_t d = detect(x, spec);
      CHECK(detect(j * x, rotated) == d);
      // Constellation symmetry: the rotated estimate decides the rotated symbol.
      CHECK(detect(j * x, spec) == q.index_of(j * q[d]));
    }
  }
}

TEST_CASE("region export") {
  const DetectorSpec spec({{1, 0}, {-1, 0}}, {1.0, 1.0}, 0.0);
  const auto grid = default_region_grid(spec, 4);
  CHECK(grid.half_width == 1.5);
  const auto samples = rasterize_regions(spec, grid);
  CHECK(samples.size() == 16);
  CHECK(samples.front().point == cdouble(-1.125, -1.125));
  CHECK(samples.front().decided == 1);
  std::ostringstream out;
  write_region_csv(out, samples);
  CHECK(out.str().rfind("re,im,decided_index\n-1.125,-1.125,1\n", 0) == 0);
  CHECK_THROWS_AS(rasterize_regions(spec, RegionGrid{{0, 0}, 0.0, 4}), ConfigError);
}
