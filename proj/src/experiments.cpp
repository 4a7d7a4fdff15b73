#include "vbaisac/experiments.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "vbaisac/rng.hpp"

namespace vbaisac {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * kPi / 180.0; }
double rad2deg(double r) { return r * 180.0 / kPi; }

}  // namespace

Scenario Scenario::load(const ScenarioConfig& c) {
  Scenario s;
  s.initial_state = {c.number("kinematics.start_x"), c.number("kinematics.start_y"),
                     c.number("kinematics.speed"), deg2rad(c.number("kinematics.heading_deg"))};
  s.input = {c.number("kinematics.accel"), deg2rad(c.number("kinematics.steer_deg"))};
  s.geometry = {c.number("kinematics.wheelbase"), c.number("kinematics.safety_radius")};
  s.horizon = c.number("kinematics.horizon");
  s.stages = c.integer("kinematics.stages");
  s.quad_step = c.number("kinematics.quad_step");

  s.tx_array = {c.integer("array.n_tx"), c.number("array.spacing_over_wavelength")};
  s.grid_min_deg = c.number("array.grid_min_deg");
  s.grid_max_deg = c.number("array.grid_max_deg");
  s.grid_step_deg = c.number("array.grid_step_deg");

  s.channel.n_tx = s.tx_array.n_antennas;
  s.channel.n_rx = c.integer("channel.n_rx");
  s.channel.n_paths = c.integer("channel.n_paths");
  s.channel.gain_variance = c.number("channel.gain_variance");
  s.channel.angle_min = deg2rad(c.number("channel.angle_min_deg"));
  s.channel.angle_max = deg2rad(c.number("channel.angle_max_deg"));
  s.channel.spacing_over_wavelength = s.tx_array.spacing_over_wavelength;

  s.rho = c.number("solver.rho");
  if (s.rho < 0.0 || s.rho > 1.0) throw ConfigError("config field solver.rho must be in [0, 1]");
  s.n_streams = c.integer("solver.n_streams");
  const std::string method = c.str("solver.method");
  if (method == "closed-form")
    s.method = FdMethod::closed_form;
  else if (method == "sdr")
    s.method = FdMethod::sdr;
  else
    throw ConfigError("config field solver.method must be 'closed-form' or 'sdr'");
  s.n_rf = c.integer("solver.n_rf");
  s.sdp_tol = c.number("solver.sdp_tol");
  s.sdp_max_iter = c.integer("solver.sdp_max_iter");
  s.outer_max = c.integer("solver.outer_max");
  s.outer_tol = c.number("solver.outer_tol");
  s.cg_tol = c.number("solver.cg_tol");
  s.cg_max_iter = c.integer("solver.cg_max_iter");
  const std::string scaling = c.str("solver.radar_scaling");
  if (scaling == "matched")
    s.radar_scaling_matched = true;
  else if (scaling == "unscaled")
    s.radar_scaling_matched = false;
  else
    throw ConfigError("config field solver.radar_scaling must be 'matched' or 'unscaled'");

  s.power = {c.number("power.p_bb"), c.number("power.p_rf"), c.number("power.p_pa"),
             c.number("power.p_ps")};

  s.snr_db = c.list("sweep.snr_db");
  s.rho_list = c.list("sweep.rho_list");
  s.pattern_rho = c.list("sweep.pattern_rho");
  s.sigma_e = c.list("sweep.sigma_e");
  s.realizations = c.integer("sweep.realizations");
  s.tv_realizations = c.integer("sweep.tv_realizations");
  s.master_seed = c.unsigned64("sweep.master_seed");
  if (s.realizations < 1 || s.tv_realizations < 1)
    throw ConfigError("config field sweep.realizations must be >= 1");
  return s;
}

SceneGeometry build_scene(const Scenario& scenario) {
  SceneGeometry g;
  g.trajectory = predict_trajectory(scenario.initial_state, scenario.input,
                                    scenario.geometry, scenario.horizon, scenario.stages,
                                    scenario.quad_step);
  g.aoi = predict_aoi(g.trajectory, scenario.geometry);
  g.angles = pointing_angles(g.aoi);
  g.distances = sensing_distances(g.aoi);
  g.allocation = allocate_antennas(g.distances, scenario.tx_array.n_antennas);
  g.radar = synthesize_radar_beamformer(g.angles, g.allocation, scenario.tx_array);

  const std::vector<double> equal(g.distances.size(), 1.0);
  g.uniform_allocation = allocate_antennas(equal, scenario.tx_array.n_antennas);
  g.radar_uniform =
      synthesize_radar_beamformer(g.angles, g.uniform_allocation, scenario.tx_array);
  return g;
}

RadarBeamformer benchmark_uniform(const Scenario& scenario) {
  return build_scene(scenario).radar_uniform;
}

Eigen::MatrixXcd radar_target(const Scenario& scenario, const RadarBeamformer& radar) {
  const Eigen::MatrixXcd aligned = align_radar_target(radar.matrix, scenario.n_streams);
  if (scenario.radar_scaling_matched) return aligned;
  // Paper-literal mode: reshape only, keep the native norm.
  return aligned * (radar.matrix.norm() / std::sqrt(double(scenario.n_streams)));
}

Eigen::MatrixXcd solve_fd(const Scenario& scenario, const Eigen::MatrixXcd& f_opt,
                          const Eigen::MatrixXcd& target, double rho) {
  TradeoffConfig cfg{rho, scenario.n_streams};
  if (scenario.method == FdMethod::closed_form)
    return closed_form_solution(f_opt, target, cfg).matrix;
  SdrOptions opts;
  opts.sdp_tol = scenario.sdp_tol;
  opts.sdp_max_iter = scenario.sdp_max_iter;
  return solve_sdr(homogenize(stack_targets(f_opt, target, cfg), cfg.n_streams), opts).matrix;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const int workers = std::min(threads, n);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

CsvTable run_aoi(const Scenario& scenario) {
  const SceneGeometry g = build_scene(scenario);
  CsvTable t;
  t.header = {"experiment", "kind", "k", "t_s", "x_m", "y_m", "speed_mps",
              "heading_rad", "dx_m", "dy_m", "radius_m"};
  int k = 0;
  for (const TrajectorySample& s : g.trajectory.samples) {
    t.add_row({"aoi", "trajectory", std::to_string(k), format_number(s.t),
               format_number(s.state.x), format_number(s.state.y),
               format_number(s.state.v), format_number(s.state.heading), "", "", ""});
    ++k;
  }
  k = 1;
  for (const AoiWaypoint& w : g.aoi.waypoints) {
    t.add_row({"aoi", "aoi", std::to_string(k), "", "", "", "", "",
               format_number(w.dx), format_number(w.dy), format_number(w.radius)});
    ++k;
  }
  return t;
}

CsvTable run_beampattern(const Scenario& scenario) {
  const SceneGeometry g = build_scene(scenario);
  const std::vector<double> grid =
      angle_grid_deg(scenario.grid_min_deg, scenario.grid_max_deg, scenario.grid_step_deg);

  const Channel ch =
      generate_channel(scenario.channel, derive_seed(scenario.master_seed, kSeedBeampattern, 0));
  const OptimalPair pair = optimal_beamformers(ch, scenario.n_streams);
  const Eigen::MatrixXcd target = radar_target(scenario, g.radar);

  CsvTable t;
  t.header = {"experiment", "series", "theta_deg", "power_linear", "power_db"};
  const auto emit = [&](const std::string& series, const Eigen::MatrixXcd& f) {
    const Beampattern p = beampattern(f * f.adjoint(), scenario.tx_array, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double db = 10.0 * std::log10(std::max(p.power[i], 1e-15));
      t.add_row({"beampattern", series, format_number(rad2deg(grid[i])),
                 format_number(p.power[i]), format_number(db)});
    }
  };

  emit("desired", g.radar.matrix);
  emit("uniform", g.radar_uniform.matrix);
  for (double rho : scenario.pattern_rho) {
    const Eigen::MatrixXcd f = solve_fd(scenario, pair.f_opt, target, rho);
    emit("rho=" + format_number(rho), f);
  }
  return t;
}

namespace {

// Per-realization spectral-efficiency samples for one sweep; slot layout is
// series-major so the sequential reduction is identical for any thread count.
struct SeSample {
  std::vector<double> values;  // indexed by emission order
};

struct SeriesSpec {
  std::string name;
  double rho;
};

}  // namespace

CsvTable run_se_sweep(const Scenario& scenario, int threads) {
  const SceneGeometry g = build_scene(scenario);
  const Eigen::MatrixXcd target_vba = radar_target(scenario, g.radar);
  const Eigen::MatrixXcd target_unif = radar_target(scenario, g.radar_uniform);

  // Emission order: optimal, radar-target, per-rho fd + uniform, hybrid.
  std::vector<SeriesSpec> series;
  series.push_back({"optimal", 1.0});
  series.push_back({"radar-target", 0.0});
  for (double rho : scenario.rho_list) {
    series.push_back({"vba-fd", rho});
    series.push_back({"uniform-fd", rho});
  }
  series.push_back({"vba-hybrid", scenario.rho});

  const int n_snr = static_cast<int>(scenario.snr_db.size());
  const int n_series = static_cast<int>(series.size());
  const int n_real = scenario.realizations;

  std::vector<SeSample> samples(n_real);
  parallel_for(n_real, threads, [&](int r) {
    const std::uint64_t seed = derive_seed(scenario.master_seed, kSeedSeSweep, r);
    const Channel ch = generate_channel(scenario.channel, seed);
    const OptimalPair pair = optimal_beamformers(ch, scenario.n_streams);

    std::vector<Eigen::MatrixXcd> precoders;
    precoders.reserve(n_series);
    precoders.push_back(pair.f_opt);
    precoders.push_back(target_vba * (std::sqrt(double(scenario.n_streams)) / target_vba.norm()));
    for (double rho : scenario.rho_list) {
      precoders.push_back(solve_fd(scenario, pair.f_opt, target_vba, rho));
      precoders.push_back(solve_fd(scenario, pair.f_opt, target_unif, rho));
    }
    HybridConfig hc;
    hc.n_rf = scenario.n_rf;
    hc.rho = scenario.rho;
    hc.n_streams = scenario.n_streams;
    hc.outer_max = scenario.outer_max;
    hc.outer_tol = scenario.outer_tol;
    hc.seed = derive_seed(seed, 1, 0);
    hc.cg.tol = scenario.cg_tol;
    hc.cg.max_iter = scenario.cg_max_iter;
    const HybridBeamformer hybrid = alternating_minimize(hc, pair.f_opt, target_vba);
    precoders.push_back(hybrid.f_rf * hybrid.f_bb);

    SeSample& out = samples[r];
    out.values.resize(static_cast<std::size_t>(n_series) * n_snr);
    for (int si = 0; si < n_series; ++si)
      for (int qi = 0; qi < n_snr; ++qi) {
        const LinkBudget budget{std::pow(10.0, scenario.snr_db[qi] / 10.0), 1.0};
        out.values[si * n_snr + qi] =
            spectral_efficiency(ch.matrix, pair.w_opt, precoders[si], budget);
      }
  });

  CsvTable t;
  t.header = {"experiment", "series", "snr_db", "rho", "sigma_e", "metric",
              "value", "realizations", "master_seed"};
  for (int si = 0; si < n_series; ++si)
    for (int qi = 0; qi < n_snr; ++qi) {
      double acc = 0.0;
      for (int r = 0; r < n_real; ++r) acc += samples[r].values[si * n_snr + qi];
      t.add_row({"se-sweep", series[si].name, format_number(scenario.snr_db[qi]),
                 format_number(series[si].rho), "0", "mean_se_bps_hz",
                 format_number(acc / n_real), std::to_string(n_real),
                 std::to_string(scenario.master_seed)});
    }
  return t;
}

CsvTable run_ee_sweep(const Scenario& scenario, int threads) {
  const SceneGeometry g = build_scene(scenario);
  const Eigen::MatrixXcd target_vba = radar_target(scenario, g.radar);

  const int n_snr = static_cast<int>(scenario.snr_db.size());
  const int n_real = scenario.realizations;
  std::vector<SeSample> samples(n_real);
  parallel_for(n_real, threads, [&](int r) {
    const std::uint64_t seed = derive_seed(scenario.master_seed, kSeedEeSweep, r);
    const Channel ch = generate_channel(scenario.channel, seed);
    const OptimalPair pair = optimal_beamformers(ch, scenario.n_streams);
    const Eigen::MatrixXcd f_fd = solve_fd(scenario, pair.f_opt, target_vba, scenario.rho);

    HybridConfig hc;
    hc.n_rf = scenario.n_rf;
    hc.rho = scenario.rho;
    hc.n_streams = scenario.n_streams;
    hc.outer_max = scenario.outer_max;
    hc.outer_tol = scenario.outer_tol;
    hc.seed = derive_seed(seed, 1, 0);
    hc.cg.tol = scenario.cg_tol;
    hc.cg.max_iter = scenario.cg_max_iter;
    const HybridBeamformer hybrid = alternating_minimize(hc, pair.f_opt, target_vba);
    const Eigen::MatrixXcd f_hy = hybrid.f_rf * hybrid.f_bb;

    SeSample& out = samples[r];
    out.values.resize(2 * n_snr);
    for (int qi = 0; qi < n_snr; ++qi) {
      const LinkBudget budget{std::pow(10.0, scenario.snr_db[qi] / 10.0), 1.0};
      out.values[qi] = spectral_efficiency(ch.matrix, pair.w_opt, f_fd, budget);
      out.values[n_snr + qi] = spectral_efficiency(ch.matrix, pair.w_opt, f_hy, budget);
    }
  });

  const double p_fd = power_sum(Architecture::full_digital, scenario.tx_array.n_antennas,
                                scenario.tx_array.n_antennas, scenario.power);
  const double p_hy = power_sum(Architecture::hybrid, scenario.tx_array.n_antennas,
                                scenario.n_rf, scenario.power);

  CsvTable t;
  t.header = {"experiment", "series", "snr_db", "rho", "sigma_e", "metric",
              "value", "realizations", "master_seed"};
  const auto emit = [&](const std::string& name, int offset, double psum) {
    for (int qi = 0; qi < n_snr; ++qi) {
      double acc = 0.0;
      for (int r = 0; r < n_real; ++r) acc += samples[r].values[offset + qi];
      const double mean_se = acc / n_real;
      t.add_row({"ee-sweep", name, format_number(scenario.snr_db[qi]),
                 format_number(scenario.rho), "0", "mean_se_bps_hz",
                 format_number(mean_se), std::to_string(n_real),
                 std::to_string(scenario.master_seed)});
      t.add_row({"ee-sweep", name, format_number(scenario.snr_db[qi]),
                 format_number(scenario.rho), "0", "mean_ee_bps_hz_w",
                 format_number(energy_efficiency(mean_se, psum)), std::to_string(n_real),
                 std::to_string(scenario.master_seed)});
    }
  };
  emit("vba-fd", 0, p_fd);
  emit("vba-hybrid", n_snr, p_hy);
  return t;
}

CsvTable run_fd_diag(const Scenario& scenario) {
  const SceneGeometry g = build_scene(scenario);
  const Eigen::MatrixXcd target = radar_target(scenario, g.radar);
  const Channel ch =
      generate_channel(scenario.channel, derive_seed(scenario.master_seed, kSeedBeampattern, 1));
  const OptimalPair pair = optimal_beamformers(ch, scenario.n_streams);

  CsvTable t;
  t.header = {"experiment", "rho", "method", "objective", "residual_opt",
              "residual_rad", "sdp_value", "sdp_gap", "eigen_ratio"};
  for (double rho : scenario.rho_list) {
    const TradeoffConfig cfg{rho, scenario.n_streams};
    const FdBeamformer cf = closed_form_solution(pair.f_opt, target, cfg);
    t.add_row({"fd-diag", format_number(rho), "closed-form", format_number(cf.objective),
               format_number((cf.matrix - pair.f_opt).norm()),
               format_number((cf.matrix - target).norm()), "", "", ""});
    if (scenario.method == FdMethod::sdr) {
      SdrOptions opts;
      opts.sdp_tol = scenario.sdp_tol;
      opts.sdp_max_iter = scenario.sdp_max_iter;
      const FdBeamformer fd =
          solve_sdr(homogenize(stack_targets(pair.f_opt, target, cfg), cfg.n_streams), opts);
      t.add_row({"fd-diag", format_number(rho), "sdr", format_number(fd.objective),
                 format_number((fd.matrix - pair.f_opt).norm()),
                 format_number((fd.matrix - target).norm()),
                 format_number(fd.sdp_value), format_number(fd.objective - fd.sdp_value),
                 format_number(fd.eigen_ratio)});
    }
  }
  return t;
}

CsvTable run_tv_sweep(const Scenario& scenario, int threads) {
  const SceneGeometry g = build_scene(scenario);
  const Eigen::MatrixXcd target_vba = radar_target(scenario, g.radar);
  const Eigen::MatrixXcd target_unif = radar_target(scenario, g.radar_uniform);

  // Beamformers are designed on the perturbed channel estimate and evaluated
  // on the static channel, so every sigma_e level rates the same links.
  const int n_snr = static_cast<int>(scenario.snr_db.size());
  const int n_lvl = static_cast<int>(scenario.sigma_e.size());
  const int n_real = scenario.tv_realizations;
  const std::vector<std::string> series = {"optimal", "vba-fd", "uniform-fd", "vba-hybrid"};
  const int n_series = static_cast<int>(series.size());

  std::vector<SeSample> samples(n_real);
  parallel_for(n_real, threads, [&](int r) {
    const std::uint64_t seed = derive_seed(scenario.master_seed, kSeedTvSweep, r);
    const Channel ch = generate_channel(scenario.channel, seed);
    SeSample& out = samples[r];
    out.values.resize(static_cast<std::size_t>(n_lvl) * n_series * n_snr);

    for (int li = 0; li < n_lvl; ++li) {
      const Channel est = perturb(
          ch, scenario.sigma_e[li],
          derive_seed(scenario.master_seed, kSeedTvPerturbBase + li, r));
      const OptimalPair pair = optimal_beamformers(est, scenario.n_streams);

      std::vector<Eigen::MatrixXcd> precoders;
      precoders.reserve(n_series);
      precoders.push_back(pair.f_opt);
      precoders.push_back(solve_fd(scenario, pair.f_opt, target_vba, scenario.rho));
      precoders.push_back(solve_fd(scenario, pair.f_opt, target_unif, scenario.rho));
      HybridConfig hc;
      hc.n_rf = scenario.n_rf;
      hc.rho = scenario.rho;
      hc.n_streams = scenario.n_streams;
      hc.outer_max = scenario.outer_max;
      hc.outer_tol = scenario.outer_tol;
      // One init stream per realization, shared across sigma levels, so the
      // level comparison sees matched starting points.
      hc.seed = derive_seed(seed, 1, 0);
      hc.cg.tol = scenario.cg_tol;
      hc.cg.max_iter = scenario.cg_max_iter;
      const HybridBeamformer hybrid = alternating_minimize(hc, pair.f_opt, target_vba);
      precoders.push_back(hybrid.f_rf * hybrid.f_bb);

      for (int si = 0; si < n_series; ++si)
        for (int qi = 0; qi < n_snr; ++qi) {
          const LinkBudget budget{std::pow(10.0, scenario.snr_db[qi] / 10.0), 1.0};
          out.values[(li * n_series + si) * n_snr + qi] =
              spectral_efficiency(ch.matrix, pair.w_opt, precoders[si], budget);
        }
    }
  });

  CsvTable t;
  t.header = {"experiment", "series", "snr_db", "rho", "sigma_e", "metric",
              "value", "realizations", "master_seed"};
  for (int li = 0; li < n_lvl; ++li)
    for (int si = 0; si < n_series; ++si)
      for (int qi = 0; qi < n_snr; ++qi) {
        double acc = 0.0;
        for (int r = 0; r < n_real; ++r)
          acc += samples[r].values[(li * n_series + si) * n_snr + qi];
        t.add_row({"tv-sweep", series[si], format_number(scenario.snr_db[qi]),
                   format_number(scenario.rho), format_number(scenario.sigma_e[li]),
                   "mean_se_bps_hz", format_number(acc / n_real), std::to_string(n_real),
                   std::to_string(scenario.master_seed)});
      }
  return t;
}

}  // namespace vbaisac
