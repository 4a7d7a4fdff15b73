#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vbaisac/experiments.hpp"
#include "vbaisac/metrics.hpp"

using namespace vbaisac;

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// A downsized scenario config used by all sweep tests.
const char* kSmallOverrides = R"(
[sweep]
snr_db = -20,-10,0
rho_list = 0.2,0.5,1.0
pattern_rho = 0,0.5,1
sigma_e = 0,1.0
realizations = 10
tv_realizations = 40
master_seed = 1
)";

Scenario small_scenario() {
  ScenarioConfig cfg = ScenarioConfig::defaults();
  ScenarioConfig user = ScenarioConfig::from_string(kSmallOverrides);
  cfg.set("sweep.snr_db", user.str("sweep.snr_db"));
  cfg.set("sweep.rho_list", user.str("sweep.rho_list"));
  cfg.set("sweep.sigma_e", user.str("sweep.sigma_e"));
  cfg.set("sweep.realizations", user.str("sweep.realizations"));
  cfg.set("sweep.tv_realizations", user.str("sweep.tv_realizations"));
  return Scenario::load(cfg);
}

double row_value(const CsvTable& t, const std::string& series, const std::string& snr,
                 const std::string& rho, const std::string& sigma,
                 const std::string& metric) {
  for (const auto& r : t.rows)
    if (r[1] == series && r[2] == snr && r[3] == rho && r[4] == sigma && r[5] == metric)
      return std::stod(r[6]);
  FAIL("row not found: ", series, " snr=", snr, " rho=", rho, " sigma=", sigma);
  return 0.0;
}

}  // namespace

TEST_CASE("config parsing, defaults, and typed errors") {
  ScenarioConfig cfg = ScenarioConfig::defaults();
  CHECK(cfg.integer("array.n_tx") == 81);
  CHECK(cfg.number("kinematics.accel") == 1.0);
  CHECK(cfg.list("sweep.snr_db").size() == 9);
  CHECK(cfg.str("solver.method") == "closed-form");

  // Unknown field names the key.
  try {
    cfg.number("array.bogus");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("array.bogus") != std::string::npos);
  }

  // Ill-typed field names the key.
  cfg.set("array.n_tx", "eighty one");
  try {
    cfg.integer("array.n_tx");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("array.n_tx") != std::string::npos);
  }

  CHECK_THROWS_AS(ScenarioConfig::from_string("key_without_section = 1"), ConfigError);
  CHECK_THROWS_AS(ScenarioConfig::from_string("[sec\nkey = 1"), ConfigError);
  CHECK_THROWS_AS(ScenarioConfig::from_string("[sec]\nnovalue"), ConfigError);

  // Round trip through the printer.
  const ScenarioConfig reparsed = ScenarioConfig::from_string(ScenarioConfig::defaults().to_string());
  CHECK(reparsed.integer("array.n_tx") == 81);
  CHECK(reparsed.number("solver.rho") == 0.5);
}

TEST_CASE("scene geometry reproduces the reference pipeline values") {
  const Scenario sc = small_scenario();
  const SceneGeometry g = build_scene(sc);
  REQUIRE(g.angles.size() == 3);
  // Frozen pipeline values for the built-in scenario (degrees and meters).
  CHECK(g.angles[0] * 180 / M_PI == doctest::Approx(11.0327).epsilon(1e-3));
  CHECK(g.angles[1] * 180 / M_PI == doctest::Approx(22.0778).epsilon(1e-3));
  CHECK(g.angles[2] * 180 / M_PI == doctest::Approx(33.1359).epsilon(1e-3));
  CHECK(g.distances[0] == doctest::Approx(2.32733).epsilon(1e-4));
  CHECK(g.distances[1] == doctest::Approx(3.60998).epsilon(1e-4));
  CHECK(g.distances[2] == doctest::Approx(4.80036).epsilon(1e-4));
  CHECK(g.allocation == std::vector<int>{3, 19, 59});
  CHECK(g.uniform_allocation == std::vector<int>{27, 27, 27});
}

TEST_CASE("uniform benchmark splits antennas evenly") {
  const Scenario sc = small_scenario();
  const RadarBeamformer bench = benchmark_uniform(sc);
  CHECK(bench.subarray_sizes == std::vector<int>{27, 27, 27});
  CHECK(bench.matrix.squaredNorm() == doctest::Approx(81.0).epsilon(1e-12));

  // Equal subarray sizes give equal-height peaks at the pointing angles.
  const Eigen::MatrixXcd r = bench.matrix * bench.matrix.adjoint();
  const Beampattern p = beampattern(r, sc.tx_array, bench.pointing_angles);
  for (double v : p.power) CHECK(v == doctest::Approx(27.0 * 27.0).epsilon(0.05));
}

TEST_CASE("aoi table has trajectory and disk rows") {
  const Scenario sc = small_scenario();
  const CsvTable t = run_aoi(sc);
  CHECK(t.rows.size() == 4 + 3);
  int traj = 0, disks = 0;
  for (const auto& r : t.rows) (r[1] == "trajectory" ? traj : disks)++;
  CHECK(traj == 4);
  CHECK(disks == 3);
}

TEST_CASE("beampattern table covers desired, uniform, and rho series") {
  Scenario sc = small_scenario();
  sc.grid_step_deg = 0.5;  // faster grid for the test
  const CsvTable t = run_beampattern(sc);
  const std::size_t grid_len = std::size_t(std::round(180.0 / 0.5)) + 1;
  CHECK(t.rows.size() == grid_len * 5);  // desired, uniform, rho=0, 0.5, 1

  // The rho=0 column matches the desired pattern up to overall scale.
  double scale = 0.0;
  bool scale_set = false;
  for (std::size_t i = 0; i < grid_len; ++i) {
    const double des = std::stod(t.rows[i][3]);
    const double rho0 = std::stod(t.rows[2 * grid_len + i][3]);
    CHECK(t.rows[2 * grid_len + i][1] == "rho=0");
    if (des > 1e-6) {
      if (!scale_set) {
        scale = rho0 / des;
        scale_set = true;
      } else {
        CHECK(rho0 / des == doctest::Approx(scale).epsilon(1e-6));
      }
    }
  }
  CHECK(scale_set);
}

TEST_CASE("se sweep means follow the structural orderings") {
  const Scenario sc = small_scenario();
  const CsvTable t = run_se_sweep(sc, 2);
  for (const std::string snr : {"-20", "-10", "0"}) {
    const double opt = row_value(t, "optimal", snr, "1", "0", "mean_se_bps_hz");
    const double radar = row_value(t, "radar-target", snr, "0", "0", "mean_se_bps_hz");
    const double hybrid = row_value(t, "vba-hybrid", snr, "0.5", "0", "mean_se_bps_hz");
    double prev = 0.0;
    for (const std::string rho : {"0.2", "0.5", "1"}) {
      const double fd = row_value(t, "vba-fd", snr, rho, "0", "mean_se_bps_hz");
      CHECK(fd <= opt + 1e-9);
      CHECK(fd >= prev - 1e-9);  // mean SE grows with rho
      prev = fd;
    }
    const double fd_half = row_value(t, "vba-fd", snr, "0.5", "0", "mean_se_bps_hz");
    CHECK(radar <= fd_half);
    CHECK(hybrid <= fd_half + 1e-9);
    CHECK(row_value(t, "vba-fd", snr, "1", "0", "mean_se_bps_hz") ==
          doctest::Approx(opt).epsilon(1e-9));
  }
}

TEST_CASE("ee sweep applies the component power budgets") {
  const Scenario sc = small_scenario();
  const CsvTable t = run_ee_sweep(sc, 2);
  const double p_fd = power_sum(Architecture::full_digital, 81, 81, sc.power);
  const double p_hy = power_sum(Architecture::hybrid, 81, 3, sc.power);
  CHECK(p_fd == doctest::Approx(43.21));
  CHECK(p_hy == doctest::Approx(21.43));
  for (const std::string snr : {"-20", "-10", "0"}) {
    const double se_fd = row_value(t, "vba-fd", snr, "0.5", "0", "mean_se_bps_hz");
    const double ee_fd = row_value(t, "vba-fd", snr, "0.5", "0", "mean_ee_bps_hz_w");
    CHECK(ee_fd == doctest::Approx(se_fd / p_fd).epsilon(1e-9));
    const double se_hy = row_value(t, "vba-hybrid", snr, "0.5", "0", "mean_se_bps_hz");
    const double ee_hy = row_value(t, "vba-hybrid", snr, "0.5", "0", "mean_ee_bps_hz_w");
    CHECK(ee_hy == doctest::Approx(se_hy / p_hy).epsilon(1e-9));
  }
}

TEST_CASE("tv sweep degrades every series at positive sigma") {
  const Scenario sc = small_scenario();
  const CsvTable t = run_tv_sweep(sc, 2);
  for (const std::string series : {"optimal", "vba-fd", "uniform-fd", "vba-hybrid"}) {
    for (const std::string snr : {"-20", "-10", "0"}) {
      const double clean = row_value(t, series, snr, "0.5", "0", "mean_se_bps_hz");
      const double noisy = row_value(t, series, snr, "0.5", "1", "mean_se_bps_hz");
      CHECK(noisy < clean);
    }
  }
}

TEST_CASE("fd diagnostics report residuals and the relaxation gap") {
  Scenario sc = small_scenario();
  sc.method = FdMethod::sdr;
  sc.tx_array.n_antennas = 16;  // small instance keeps the SDP quick
  sc.channel.n_tx = 16;
  sc.rho_list = {0.0, 0.5, 1.0};
  const CsvTable t = run_fd_diag(sc);
  REQUIRE(t.rows.size() == 6);  // closed-form + sdr per rho
  for (std::size_t i = 0; i < t.rows.size(); i += 2) {
    const double cf_obj = std::stod(t.rows[i][3]);
    const double sdr_obj = std::stod(t.rows[i + 1][3]);
    const double sdp_value = std::stod(t.rows[i + 1][6]);
    CHECK(sdr_obj <= cf_obj * 1.01 + 1e-9);
    CHECK(sdp_value <= cf_obj + 1e-6);
    CHECK(std::stod(t.rows[i + 1][8]) > 1e3);  // near rank-one extraction
  }
  // Endpoint rows have zero residual to their target.
  CHECK(std::stod(t.rows[0][5]) < 1e-9);  // rho = 0 matches the radar target
  CHECK(std::stod(t.rows[4][4]) < 1e-9);  // rho = 1 matches the optimal target
}

TEST_CASE("sweep rows stay inside the configured coordinate sets") {
  const Scenario sc = small_scenario();
  const CsvTable t = run_se_sweep(sc, 2);
  const auto in_set = [](double v, const std::vector<double>& set) {
    for (double s : set)
      if (v == s) return true;
    return false;
  };
  for (const auto& r : t.rows) {
    CHECK(in_set(std::stod(r[2]), sc.snr_db));
    const double rho = std::stod(r[3]);
    CHECK((in_set(rho, sc.rho_list) || rho == 0.0 || rho == 1.0 || rho == sc.rho));
  }
}

TEST_CASE("sweeps are byte-identical across thread counts") {
  const Scenario sc = small_scenario();
  CHECK(run_se_sweep(sc, 1).to_string() == run_se_sweep(sc, 4).to_string());
  CHECK(run_tv_sweep(sc, 1).to_string() == run_tv_sweep(sc, 3).to_string());
}

TEST_CASE("changing the master seed changes values but not the schema") {
  Scenario sc = small_scenario();
  const CsvTable a = run_se_sweep(sc, 2);
  sc.master_seed = 77;
  const CsvTable b = run_se_sweep(sc, 2);
  REQUIRE(a.rows.size() == b.rows.size());
  CHECK(a.header == b.header);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i][1] == b.rows[i][1]);
    CHECK(a.rows[i][2] == b.rows[i][2]);
    if (a.rows[i][6] != b.rows[i][6]) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("cli runs end to end with deterministic output") {
  const char* cli = std::getenv("VBAISAC_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "VBAISAC_CLI must point at the binary");

  const fs::path dir = fs::temp_directory_path() / "vbaisac_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg_path = dir / "scenario.cfg";
  {
    std::ofstream f(cfg_path);
    f << kSmallOverrides;
  }

  const auto run = [&](const std::string& sub, const std::string& out, int threads) {
    std::ostringstream cmd;
    cmd << '"' << cli << "\" " << sub << " --config " << cfg_path << " --out "
        << (dir / out) << " --threads " << threads << " > /dev/null";
    return std::system(cmd.str().c_str());
  };

  REQUIRE(run("aoi", "a", 1) == 0);
  REQUIRE(run("se-sweep", "s1", 1) == 0);
  REQUIRE(run("se-sweep", "s2", 2) == 0);
  CHECK(read_file(dir / "s1/se_sweep.csv") == read_file(dir / "s2/se_sweep.csv"));

  // Seed override flows through and changes the data.
  std::ostringstream cmd;
  cmd << '"' << cli << "\" se-sweep --config " << cfg_path << " --out " << (dir / "s3")
      << " --seed 99 --threads 2 > /dev/null";
  REQUIRE(std::system(cmd.str().c_str()) == 0);
  CHECK(read_file(dir / "s1/se_sweep.csv") != read_file(dir / "s3/se_sweep.csv"));

  // Config errors name the field and exit with the config status.
  {
    std::ofstream f(dir / "bad.cfg");
    f << "[solver]\nrho = fast\n";
  }
  std::ostringstream bad;
  bad << '"' << cli << "\" se-sweep --config " << (dir / "bad.cfg") << " --out "
      << (dir / "b") << " 2> " << (dir / "bad.err");
  const int code = std::system(bad.str().c_str());
  CHECK(WEXITSTATUS(code) == 2);
  CHECK(read_file(dir / "bad.err").find("solver.rho") != std::string::npos);

  fs::remove_all(dir);
}
