#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vbaisac/arrays.hpp"
#include "vbaisac/channel.hpp"
#include "vbaisac/config.hpp"
#include "vbaisac/csv.hpp"
#include "vbaisac/fd_solver.hpp"
#include "vbaisac/hybrid_solver.hpp"
#include "vbaisac/kinematics.hpp"
#include "vbaisac/metrics.hpp"

namespace vbaisac {

/// Typed, validated view of a scenario config.
struct Scenario {
  VehicleState initial_state;
  ControlInput input;
  VehicleGeometry geometry;
  double horizon = 0.2;
  int stages = 3;
  double quad_step = 1e-3;

  ArrayConfig tx_array;
  double grid_min_deg = -90.0, grid_max_deg = 90.0, grid_step_deg = 0.1;

  ChannelConfig channel;

  double rho = 0.5;
  int n_streams = 3;
  FdMethod method = FdMethod::closed_form;
  int n_rf = 3;
  double sdp_tol = 1e-7;
  int sdp_max_iter = 100;
  int outer_max = 50;
  double outer_tol = 1e-5;
  double cg_tol = 1e-6;
  int cg_max_iter = 400;
  bool radar_scaling_matched = true;

  PowerModel power;

  std::vector<double> snr_db, rho_list, pattern_rho, sigma_e;
  int realizations = 400;
  int tv_realizations = 200;
  std::uint64_t master_seed = 1;

  static Scenario load(const ScenarioConfig& config);
};

/// Seed-stream identifiers, one per experiment (see rng.hpp).
enum : std::uint64_t {
  kSeedAoi = 0,
  kSeedBeampattern = 1,
  kSeedSeSweep = 2,
  kSeedEeSweep = 3,
  kSeedTvSweep = 4,
  // Perturbation streams for the time-varying sweep start here, one per
  // sigma_e level: kSeedTvPerturbBase + level.
  kSeedTvPerturbBase = 0x100,
};

/// AoI-derived geometry shared by the experiments.
struct SceneGeometry {
  Trajectory trajectory;
  Aoi aoi;
  std::vector<double> angles;
  std::vector<double> distances;
  std::vector<int> allocation;          // distance^4-proportional
  std::vector<int> uniform_allocation;  // even split benchmark
  RadarBeamformer radar;                // behavior-aware beamformer
  RadarBeamformer radar_uniform;        // benchmark beamformer
};

SceneGeometry build_scene(const Scenario& scenario);

/// Benchmark radar beamformer: the same pointing angles with the antennas
/// evenly distributed across the subarrays.
RadarBeamformer benchmark_uniform(const Scenario& scenario);

/// Radar matrix reshaped to n_streams columns; scaled onto the power sphere
/// in "matched" mode, left at its native norm otherwise.
Eigen::MatrixXcd radar_target(const Scenario& scenario, const RadarBeamformer& radar);

/// Full-digital solve via the scenario's configured method.
Eigen::MatrixXcd solve_fd(const Scenario& scenario, const Eigen::MatrixXcd& f_opt,
                          const Eigen::MatrixXcd& target, double rho);

/// Runs fn(0..n-1) across the given worker count. Results must be written to
/// per-index slots; any aggregation afterwards is sequential, so output is
/// independent of the thread count.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

CsvTable run_aoi(const Scenario& scenario);
CsvTable run_beampattern(const Scenario& scenario);
CsvTable run_se_sweep(const Scenario& scenario, int threads = 1);
CsvTable run_ee_sweep(const Scenario& scenario, int threads = 1);
CsvTable run_tv_sweep(const Scenario& scenario, int threads = 1);

/// Per-solve diagnostics for the full-digital designs across the configured
/// rho list: objective, residuals to both targets, and for the SDR route the
/// relaxation value and extraction eigenvalue ratio.
CsvTable run_fd_diag(const Scenario& scenario);

}  // namespace vbaisac
