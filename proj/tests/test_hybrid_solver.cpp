#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "vbaisac/arrays.hpp"
#include "vbaisac/channel.hpp"
#include "vbaisac/fd_solver.hpp"
#include "vbaisac/hybrid_solver.hpp"
#include "vbaisac/rng.hpp"

using namespace vbaisac;

namespace {

constexpr double kPi = 3.14159265358979323846;
double deg(double d) { return d * kPi / 180.0; }

Eigen::MatrixXcd random_matrix(Rng& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = rng.complex_gaussian(1.0);
  return m;
}

Eigen::MatrixXcd random_sphere(Rng& rng, int rows, int cols) {
  Eigen::MatrixXcd m = random_matrix(rng, rows, cols);
  return m * (std::sqrt(double(cols)) / m.norm());
}

Eigen::MatrixXcd random_phases(Rng& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = std::polar(1.0, 2 * kPi * rng.uniform());
  return m;
}

HybridConfig config_for(int n_rf, double rho, int n_streams, std::uint64_t seed) {
  HybridConfig hc;
  hc.n_rf = n_rf;
  hc.rho = rho;
  hc.n_streams = n_streams;
  hc.seed = seed;
  return hc;
}

}  // namespace

TEST_CASE("digital step with an identity-like analog stage averages the targets") {
  Rng rng(1);
  const int n = 6;
  const Eigen::MatrixXcd f_opt = random_sphere(rng, n, 2);
  const Eigen::MatrixXcd f_rad = random_sphere(rng, n, 2);
  // F_RF = I is unit-modulus on the diagonal only in a square layout; the
  // stacked pseudoinverse collapses to rho-weighted averaging.
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  for (double rho : {0.0, 0.3, 0.7, 1.0}) {
    const Eigen::MatrixXcd f_bb = digital_step(eye, f_opt, f_rad, rho);
    const Eigen::MatrixXcd expect = rho * f_opt + (1 - rho) * f_rad;
    CHECK((f_bb - expect).norm() < 1e-10);
  }
}

TEST_CASE("digital step satisfies the normal equations at rho = 1") {
  Rng rng(2);
  const Eigen::MatrixXcd f_rf = random_phases(rng, 10, 3);
  const Eigen::MatrixXcd f_opt = random_sphere(rng, 10, 3);
  const Eigen::MatrixXcd f_bb = digital_step(f_rf, f_opt, f_opt, 1.0);
  CHECK((f_rf.adjoint() * (f_rf * f_bb - f_opt)).norm() < 1e-9);
}

TEST_CASE("digital step represents a representable target exactly") {
  Rng rng(3);
  const Eigen::VectorXcd v = steering_vector(ArrayConfig{12, 0.5}, deg(20.0), 12);
  const std::complex<double> c{0.7, -0.4};
  const Eigen::MatrixXcd f_bb = digital_step(v, v * c, v * c, 0.0);
  CHECK(f_bb.rows() == 1);
  CHECK(std::abs(f_bb(0, 0) - c) < 1e-12);
  CHECK((v * f_bb - v * c).norm() < 1e-12);
}

TEST_CASE("digital step rejects a rank-deficient analog beamformer") {
  Rng rng(4);
  Eigen::MatrixXcd f_rf = random_phases(rng, 8, 2);
  f_rf.col(1) = f_rf.col(0);
  const Eigen::MatrixXcd t = random_sphere(rng, 8, 2);
  CHECK_THROWS_AS(digital_step(f_rf, t, t, 0.5), std::invalid_argument);
}

TEST_CASE("vectorization identity behind the analog step") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n_tx = 2 + int(rng.uniform() * 5);
    const int n_rf = 1 + int(rng.uniform() * 3);
    const int n_s = 1 + int(rng.uniform() * n_rf);
    const Eigen::MatrixXcd f_rf = random_matrix(rng, n_tx, n_rf);
    const Eigen::MatrixXcd f_bb = random_matrix(rng, n_rf, n_s);
    const Eigen::MatrixXcd f = random_matrix(rng, n_tx, n_s);

    QuadraticObjective obj = QuadraticObjective::two_target_kron(
        f_bb.transpose(), n_tx, Eigen::Map<const Eigen::VectorXcd>(f.data(), f.size()),
        Eigen::Map<const Eigen::VectorXcd>(f.data(), f.size()), 1.0);
    Eigen::Map<const Eigen::VectorXcd> p(f_rf.data(), f_rf.size());
    const double direct = (f_rf * f_bb - f).squaredNorm();
    CHECK(obj.value(p) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("analog step recovers pure steering phases") {
  const Eigen::VectorXcd v = steering_vector(ArrayConfig{16, 0.5}, deg(35.0), 16);
  const Eigen::MatrixXcd f_bb = Eigen::MatrixXcd::Identity(1, 1);
  Rng rng(6);
  CgOptions opts;
  opts.tol = 1e-9;
  opts.max_iter = 2000;
  const Eigen::MatrixXcd f_rf =
      analog_step(f_bb, v, v, 0.0, random_phases(rng, 16, 1), opts);
  CHECK(hybrid_objective(f_rf, f_bb, v, v, 0.0) < 1e-8);
}

TEST_CASE("analog step never increases the objective from a warm start") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n_tx = 10;
    const Eigen::MatrixXcd f_opt = random_sphere(rng, n_tx, 2);
    const Eigen::MatrixXcd f_rad = random_sphere(rng, n_tx, 2);
    const Eigen::MatrixXcd f_rf0 = random_phases(rng, n_tx, 3);
    const Eigen::MatrixXcd f_bb = digital_step(f_rf0, f_opt, f_rad, 0.5);
    const double before = hybrid_objective(f_rf0, f_bb, f_opt, f_rad, 0.5);
    const Eigen::MatrixXcd f_rf = analog_step(f_bb, f_opt, f_rad, 0.5, f_rf0);
    CHECK(hybrid_objective(f_rf, f_bb, f_opt, f_rad, 0.5) <= before + 1e-10);
  }
}

TEST_CASE("alternating minimization descends monotonically for every seed") {
  Rng rng(8);
  const Eigen::MatrixXcd f_opt = random_sphere(rng, 12, 2);
  const RadarBeamformer bf = synthesize_radar_beamformer(
      {deg(-20.0), deg(30.0)}, {5, 7}, ArrayConfig{12, 0.5});
  const Eigen::MatrixXcd f_rad = align_radar_target(bf.matrix, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const HybridBeamformer hb =
        alternating_minimize(config_for(3, 0.5, 2, seed), f_opt, f_rad);
    REQUIRE(hb.objective_trace.size() >= 2);
    for (std::size_t i = 1; i < hb.objective_trace.size(); ++i)
      CHECK(hb.objective_trace[i] <= hb.objective_trace[i - 1] + 1e-10);
    // Feasibility after the final scaling.
    for (Eigen::Index c = 0; c < hb.f_rf.cols(); ++c)
      for (Eigen::Index r = 0; r < hb.f_rf.rows(); ++r)
        CHECK(std::abs(std::abs(hb.f_rf(r, c)) - 1.0) < 1e-9);
    CHECK((hb.f_rf * hb.f_bb).squaredNorm() == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("full analog freedom reaches the digital optimum") {
  // With as many RF chains as antennas the product spans every matrix, so the
  // hybrid objective must come within a whisker of the unconstrained optimum,
  // which in turn lower-bounds the sphere-constrained closed form.
  Rng rng(9);
  int wins = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n_tx = 8;
    const Eigen::MatrixXcd f_opt = random_sphere(rng, n_tx, 2);
    const Eigen::MatrixXcd f_rad = random_sphere(rng, n_tx, 2);
    const FdBeamformer fd = closed_form_solution(f_opt, f_rad, {0.5, 2});
    HybridConfig hc = config_for(n_tx, 0.5, 2, 1000 + trial);
    hc.cg.max_iter = 800;
    const HybridBeamformer hb = alternating_minimize(hc, f_opt, f_rad);
    if (hb.objective_trace.back() <= fd.objective * 1.10 + 1e-9) ++wins;
  }
  CHECK(wins == 20);
}

TEST_CASE("exactly representable single-beam target reaches zero objective") {
  const Eigen::VectorXcd v = steering_vector(ArrayConfig{16, 0.5}, deg(12.0), 16);
  const Eigen::MatrixXcd target = align_radar_target(v, 1);
  HybridConfig hc = config_for(1, 0.0, 1, 5);
  hc.cg.tol = 1e-10;
  hc.cg.max_iter = 3000;
  hc.outer_max = 80;
  hc.outer_tol = 1e-12;
  const HybridBeamformer hb = alternating_minimize(hc, target, target);
  CHECK(hb.objective_trace.back() < 1e-6);
}

TEST_CASE("more RF chains never hurt in the median") {
  Rng rng(10);
  const int n_tx = 12, n_s = 2;
  const Eigen::MatrixXcd f_opt = random_sphere(rng, n_tx, n_s);
  const RadarBeamformer bf = synthesize_radar_beamformer(
      {deg(-10.0), deg(25.0)}, {6, 6}, ArrayConfig{n_tx, 0.5});
  const Eigen::MatrixXcd f_rad = align_radar_target(bf.matrix, n_s);

  const auto median_objective = [&](int n_rf) {
    std::vector<double> finals;
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      HybridConfig hc = config_for(n_rf, 0.5, n_s, 100 + seed);
      hc.cg.max_iter = 600;
      finals.push_back(alternating_minimize(hc, f_opt, f_rad).objective_trace.back());
    }
    std::sort(finals.begin(), finals.end());
    return finals[finals.size() / 2];
  };
  double prev = 1e300;
  for (int n_rf : {2, 3, 4, 6}) {
    const double med = median_objective(n_rf);
    CHECK(med <= prev + 1e-9);
    prev = med;
  }
}

TEST_CASE("target-phase initialization is deterministic") {
  Rng rng(11);
  const Eigen::MatrixXcd f_opt = random_sphere(rng, 10, 2);
  const Eigen::MatrixXcd f_rad = random_sphere(rng, 10, 2);
  HybridConfig hc = config_for(3, 0.5, 2, 1);
  hc.target_phase_init = true;
  const HybridBeamformer a = alternating_minimize(hc, f_opt, f_rad);
  hc.seed = 999;  // seed must not matter in this mode
  const HybridBeamformer b = alternating_minimize(hc, f_opt, f_rad);
  CHECK(a.f_rf == b.f_rf);
  CHECK(a.f_bb == b.f_bb);
}

TEST_CASE("configuration validation") {
  Rng rng(12);
  const Eigen::MatrixXcd t = random_sphere(rng, 6, 2);
  CHECK_THROWS_AS(alternating_minimize(config_for(1, 0.5, 2, 0), t, t),
                  std::invalid_argument);  // n_rf < n_streams
  CHECK_THROWS_AS(alternating_minimize(config_for(7, 0.5, 2, 0), t, t),
                  std::invalid_argument);  // n_rf > n_tx
}
