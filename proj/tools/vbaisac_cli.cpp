// Command-line front end: scenario configs in, CSV tables out.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "vbaisac/config.hpp"
#include "vbaisac/experiments.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitSolverError = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::string seed_override;
  int threads = 0;  // 0 = hardware concurrency
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Scenario config file (defaults apply)");
  cmd->add_option("--out", args.out_dir, "Output directory for CSV files");
  cmd->add_option("--seed", args.seed_override, "Master seed override");
  cmd->add_option("--threads", args.threads, "Worker threads (0 = auto)");
}

vbaisac::Scenario load_scenario(const CommonArgs& args) {
  vbaisac::ScenarioConfig cfg = args.config_path.empty()
                                    ? vbaisac::ScenarioConfig::defaults()
                                    : vbaisac::ScenarioConfig::from_file(args.config_path);
  if (!args.seed_override.empty()) cfg.set("sweep.master_seed", args.seed_override);
  return vbaisac::Scenario::load(cfg);
}

int effective_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void write_table(const vbaisac::CsvTable& table, const std::string& dir,
                 const std::string& name) {
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / name).string();
  table.write(path);
  std::cout << "wrote " << path << " (" << table.rows.size() << " rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Behavior-aware ISAC beamforming simulator"};
  app.require_subcommand(1);

  CommonArgs args;
  auto* aoi = app.add_subcommand("aoi", "Predicted trajectory and sensing disks");
  auto* pattern = app.add_subcommand("beampattern", "Radar beampatterns for the scenario");
  auto* se = app.add_subcommand("se-sweep", "Mean spectral efficiency vs SNR and rho");
  auto* ee = app.add_subcommand("ee-sweep", "Energy efficiency of both architectures");
  auto* tv = app.add_subcommand("tv-sweep", "Spectral efficiency under channel estimate error");
  auto* diag = app.add_subcommand("fd-diag", "Per-solve diagnostics of the full-digital designs");
  auto* defaults = app.add_subcommand("print-defaults", "Print the built-in scenario config");
  for (CLI::App* cmd : {aoi, pattern, se, ee, tv, diag}) add_common(cmd, args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (defaults->parsed()) {
      std::cout << vbaisac::ScenarioConfig::defaults().to_string();
      return 0;
    }
    const vbaisac::Scenario scenario = load_scenario(args);
    const int threads = effective_threads(args.threads);
    if (aoi->parsed())
      write_table(vbaisac::run_aoi(scenario), args.out_dir, "aoi.csv");
    else if (pattern->parsed())
      write_table(vbaisac::run_beampattern(scenario), args.out_dir, "beampattern.csv");
    else if (se->parsed())
      write_table(vbaisac::run_se_sweep(scenario, threads), args.out_dir, "se_sweep.csv");
    else if (ee->parsed())
      write_table(vbaisac::run_ee_sweep(scenario, threads), args.out_dir, "ee_sweep.csv");
    else if (tv->parsed())
      write_table(vbaisac::run_tv_sweep(scenario, threads), args.out_dir, "tv_sweep.csv");
    else if (diag->parsed())
      write_table(vbaisac::run_fd_diag(scenario), args.out_dir, "fd_diag.csv");
    return 0;
  } catch (const vbaisac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverError;
  }
}
