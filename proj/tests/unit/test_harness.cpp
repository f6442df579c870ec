#include <sstream>

#include "doctest.h"
#include "onebit/harness.hpp"

using namespace onebit;

namespace {

const double kInv10 = 1.0 / std::sqrt(10.0);
const cdouble kInner{kInv10, kInv10};
const cdouble kOuter{3 * kInv10, 3 * kInv10};

SimConfig base_config(int m, int tau, double snr_db, std::int64_t trials) {
  SimConfig c;
  c.m_antennas = m;
  c.tau = {tau};
  c.snr_db = {snr_db};
  c.trials = trials;
  c.seed = 12345;
  c.threads = 1;
  return c;
}

} // namespace

TEST_CASE("run_trial is deterministic") {
  const auto config = base_config(64, 32, 5.0, 1);
  const Scenario sc = make_scenario(config, {64, 32, 5.0, 0.0});
  for (std::uint64_t t = 0; t < 20; ++t) {
    CHECK(run_trial(sc, t) == run_trial(sc, t));
    CHECK(estimate_symbol(sc, 3, t) == estimate_symbol(sc, 3, t));
  }
  SimConfig no_seed = config;
  no_seed.seed.reset();
  CHECK_THROWS_AS(make_scenario(no_seed, {64, 32, 5.0, 0.0}), ConfigError);
}

TEST_CASE("symbols are drawn uniformly") {
  const auto config = base_config(8, 4, 0.0, 1);
  const Scenario sc = make_scenario(config, {8, 4, 0.0, 0.0});
  std::vector<int> counts(16, 0);
  const int n = 160000;
  for (int t = 0; t < n; ++t) ++counts[draw_symbol(sc, static_cast<std::uint64_t>(t))];
  for (int c : counts) CHECK(std::abs(c - n / 16) < 4 * std::sqrt(n / 16.0));
}

TEST_CASE("SER bookkeeping") {
  const auto r = make_ser_result({64, 32, 0.0, 0.0}, 25, 100);
  CHECK(r.ser == 0.25);
  CHECK(r.std_err == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));

  auto config = base_config(16, 4, 0.0, 1);
  config.snr_db = {-5.0, 30.0};
  for (const auto& s : run_ser(config)) CHECK((s.ser == 0.0 || s.ser == 1.0));
}

TEST_CASE("run_ser does not depend on the thread count") {
  auto config = base_config(32, 8, 6.0, 5000);
  config.snr_db = {0.0, 6.0, 20.0};
  const auto one = run_ser(config);
  config.threads = 4;
  const auto four = run_ser(config);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].errors == four[i].errors);
  std::ostringstream a, b;
  write_ser_csv(a, one);
  write_ser_csv(b, four);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("m_antennas,tau,snr_db,alpha,errors,trials,ser,std_err\n", 0) == 0);
}

TEST_CASE("alpha sweep uses common random numbers") {
  auto config = base_config(64, 32, 5.0, 3000);
  config.alpha = {0.0};
  const auto direct = run_ser(config);
  const auto swept = run_alpha_sweep(config);
  REQUIRE(swept.size() == 1);
  CHECK(swept[0].errors == direct[0].errors);

  config.alpha = {0.0, 0.001, 1.0};
  config.threads = 3;
  const auto a = run_alpha_sweep(config);
  config.threads = 1;
  const auto b = run_alpha_sweep(config);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].errors == b[i].errors);
  CHECK(a[0].errors == direct[0].errors);
}

TEST_CASE("high SNR confuses only same-phase symbols") {
  const auto config = base_config(256, 32, 40.0, 1);
  const Scenario sc = make_scenario(config, {256, 32, 40.0, 0.0});
  const auto inner = sc.constellation().index_of(kInner);
  const auto outer = sc.constellation().index_of(kOuter);
  int same_phase = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const auto outcome = run_trial_with_symbol(sc, inner, t);
    same_phase += (outcome.detected == inner || outcome.detected == outer) ? 1 : 0;
  }
  CHECK(same_phase >= 950);
}

TEST_CASE("moderate SNR with a large array rarely errs") {
  const auto config = base_config(256, 32, 4.0, 2000);
  const auto r = run_ser(config);
  CHECK(r[0].ser < 0.02);
}

TEST_CASE("longer pilots help at M = 64") {
  auto config = base_config(64, 4, 10.0, 20000);
  config.tau = {4, 8};
  config.sweep = Sweep::kTau;
  const auto r = run_ser(config);
  CHECK(r[1].ser < r[0].ser);
}

TEST_CASE("Monte Carlo mean and variance agree with the closed forms") {
  const auto config = base_config(128, 32, 0.0, 1);
  const Scenario sc = make_scenario(config, {128, 32, 0.0, 0.0});
  const auto l = sc.constellation().index_of(kInner);
  const auto stats = symbol_statistics(sc, l, 100000, 1);
  const cdouble e = sc.moments().expected[l];
  const double v = sc.moments().variance[l];
  CHECK(std::abs(stats.mean - e) < 3.0 * stats.mean_se);
  CHECK(std::abs(stats.variance - v) < 3.0 * stats.variance_se);
}

TEST_CASE("scatter output") {
  auto config = base_config(128, 32, 0.0, 10000);
  const auto result = run_scatter(config);
  const std::size_t L = 16;
  REQUIRE(result.points.size() == L * 10000);
  std::vector<cdouble> sum(L);
  std::vector<double> sum2(L, 0.0);
  for (const auto& p : result.points) sum[p.index] += p.xhat;
  for (std::size_t l = 0; l < L; ++l) sum[l] /= 10000.0;
  for (const auto& p : result.points) sum2[p.index] += std::norm(p.xhat - sum[p.index]);
  for (std::size_t l = 0; l < L; ++l) {
    const double se = std::sqrt(sum2[l] / 9999.0 / 10000.0);
    CHECK(std::abs(sum[l] - result.moments.expected[l]) < 3.0 * se);
  }

  std::ostringstream pts, exp;
  config.trials = 2;
  const auto small = run_scatter(config);
  write_scatter_csv(pts, small);
  write_scatter_expected_csv(exp, small);
  CHECK(pts.str().rfind("index,xhat_re,xhat_im\n0,", 0) == 0);
  CHECK(exp.str().rfind("index,symbol_re,symbol_im,e_re,e_im\n", 0) == 0);
}

TEST_CASE("scatter clusters of same-phase symbols merge at 20 dB") {
  auto centroid_gap = [](double snr_db) {
    SimConfig c = base_config(128, 32, snr_db, 100);
    const auto result = run_scatter(c);
    const auto& q = result.moments.symbols;
    const auto inner = std::find(q.begin(), q.end(), kInner) - q.begin();
    const auto outer = std::find(q.begin(), q.end(), kOuter) - q.begin();
    cdouble ci, co;
    for (const auto& p : result.points) {
      if (static_cast<long>(p.index) == inner) ci += p.xhat;
      if (static_cast<long>(p.index) == outer) co += p.xhat;
    }
    return std::abs(ci - co) / 100.0 / std::sqrt(db_to_linear(snr_db));
  };
  CHECK(centroid_gap(20.0) < 0.2 * centroid_gap(0.0));
}

TEST_CASE("region export follows the detector") {
  SimConfig c = base_config(128, 32, 5.0, 1);
  c.alpha = {1.0};
  c.region_resolution = 64;
  const auto regions = run_regions(c);
  CHECK(regions.samples.size() == 64u * 64u);
  const auto table = moment_table(qam16(), dft_pilot(32), db_to_linear(5.0), 128);
  double largest = 0.0;
  for (const auto& e : table.expected) largest = std::max(largest, std::abs(e));
  CHECK(regions.grid.half_width == doctest::Approx(1.5 * largest));
}
