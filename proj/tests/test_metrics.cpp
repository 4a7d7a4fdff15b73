#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vbaisac/channel.hpp"
#include "vbaisac/metrics.hpp"
#include "vbaisac/rng.hpp"

using namespace vbaisac;

namespace {

const ChannelConfig kConfig{81, 16, 10, 1.0, -M_PI / 2, M_PI / 2, 0.5};

Eigen::MatrixXcd random_precoder(Rng& rng, int n_tx, int n_streams) {
  Eigen::MatrixXcd f(n_tx, n_streams);
  for (Eigen::Index j = 0; j < f.cols(); ++j)
    for (Eigen::Index i = 0; i < f.rows(); ++i) f(i, j) = rng.complex_gaussian(1.0);
  return f * (std::sqrt(double(n_streams)) / f.norm());
}

}  // namespace

TEST_CASE("zero precoder carries zero rate") {
  const Channel ch = generate_channel(kConfig, 4);
  const OptimalPair pair = optimal_beamformers(ch, 3);
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(81, 3);
  CHECK(spectral_efficiency(ch.matrix, pair.w_opt, zero, {1.0, 1.0}) == doctest::Approx(0.0));
}

TEST_CASE("optimal pair rate equals the singular-value formula") {
  const Channel ch = generate_channel(kConfig, 8);
  const OptimalPair pair = optimal_beamformers(ch, 3);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ch.matrix);
  for (double snr : {1e-3, 0.1, 1.0, 100.0}) {
    double expect = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double s = svd.singularValues()(i);
      expect += std::log2(1.0 + snr * s * s);
    }
    const double got = spectral_efficiency(ch.matrix, pair.w_opt, pair.f_opt, {snr, 1.0});
    CHECK(got == doctest::Approx(expect).epsilon(1e-10));
    CHECK(spectral_efficiency_upper(ch.matrix, 3, {snr, 1.0}) ==
          doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("high-snr slope adds about n_streams bits per doubling") {
  const Channel ch = generate_channel(kConfig, 9);
  const OptimalPair pair = optimal_beamformers(ch, 3);
  const double r1 = spectral_efficiency(ch.matrix, pair.w_opt, pair.f_opt, {1e3, 1.0});
  const double r2 = spectral_efficiency(ch.matrix, pair.w_opt, pair.f_opt, {2e3, 1.0});
  CHECK(r2 - r1 == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("rate is monotone in snr and never beats the upper bound") {
  const Channel ch = generate_channel(kConfig, 10);
  const OptimalPair pair = optimal_beamformers(ch, 3);
  Rng rng(55);
  for (int trial = 0; trial < 250; ++trial) {
    const Eigen::MatrixXcd f = random_precoder(rng, 81, 3);
    double prev = -1.0;
    for (double snr : {1e-4, 1e-2, 1.0, 1e2}) {
      const double r = spectral_efficiency(ch.matrix, pair.w_opt, f, {snr, 1.0});
      const double up = spectral_efficiency_upper(ch.matrix, 3, {snr, 1.0});
      CHECK(r <= up + 1e-9);
      CHECK(r >= prev);
      prev = r;
    }
  }
}

TEST_CASE("only the power ratio matters") {
  const Channel ch = generate_channel(kConfig, 12);
  const OptimalPair pair = optimal_beamformers(ch, 3);
  const double a = spectral_efficiency(ch.matrix, pair.w_opt, pair.f_opt, {2.0, 4.0});
  const double b = spectral_efficiency(ch.matrix, pair.w_opt, pair.f_opt, {0.5, 1.0});
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("component power sums reproduce the reference budgets") {
  const PowerModel model{10.0, 0.3, 0.1, 0.01};
  CHECK(power_sum(Architecture::hybrid, 81, 3, model) == doctest::Approx(21.43).epsilon(1e-12));
  CHECK(power_sum(Architecture::full_digital, 81, 81, model) ==
        doctest::Approx(43.21).epsilon(1e-12));
  CHECK(power_sum(Architecture::hybrid, 81, 3, PowerModel{0, 0, 0, 0}) == 0.0);
}

TEST_CASE("energy efficiency is rate over power") {
  CHECK(energy_efficiency(10.0, 21.43) == doctest::Approx(10.0 / 21.43).epsilon(1e-12));
  CHECK(energy_efficiency(0.0, 5.0) == 0.0);
  CHECK(energy_efficiency(8.0, 4.0) == doctest::Approx(2.0 * energy_efficiency(8.0, 8.0)));
  CHECK_THROWS_AS(energy_efficiency(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("beampattern mse ignores scale and matches zero for identical shapes") {
  Beampattern a;
  a.grid = {0.0, 0.1, 0.2, 0.3};
  a.power = {1.0, 4.0, 2.0, 0.5};
  Beampattern b = a;
  CHECK(beampattern_mse(a, b) == 0.0);
  for (double& v : b.power) v *= 3.0;
  CHECK(beampattern_mse(a, b) == doctest::Approx(0.0).epsilon(1e-15));
  b.power[1] = 1.0;
  CHECK(beampattern_mse(a, b) > 0.0);
  Beampattern c = a;
  c.grid[1] = 0.15;
  CHECK_THROWS_AS(beampattern_mse(a, c), std::invalid_argument);
}
