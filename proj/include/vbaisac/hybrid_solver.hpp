#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "vbaisac/manifold.hpp"

namespace vbaisac {

struct HybridConfig {
  int n_rf = 3;        // n_streams <= n_rf <= n_tx
  double rho = 0.5;
  int n_streams = 3;
  int outer_max = 50;
  double outer_tol = 1e-5;  // relative objective decrease between outer iterations
  std::uint64_t seed = 0;   // analog initialization phases
  // Deterministic alternative to random phases: initialize from the phases of
  // the weighted target matrix (columns cycled up to n_rf).
  bool target_phase_init = false;
  CgOptions cg;  // inner manifold solve
};

struct HybridBeamformer {
  Eigen::MatrixXcd f_rf;  // n_tx x n_rf, unit-modulus entries
  Eigen::MatrixXcd f_bb;  // n_rf x n_streams
  std::vector<double> objective_trace;  // pre-scaling, non-increasing
};

/// rho |F_RF F_BB - F_opt|_F^2 + (1 - rho) |F_RF F_BB - F_rad|_F^2.
double hybrid_objective(const Eigen::MatrixXcd& f_rf, const Eigen::MatrixXcd& f_bb,
                        const Eigen::MatrixXcd& f_opt,
                        const Eigen::MatrixXcd& f_rad_aligned, double rho);

/// Least-squares digital update: the pseudoinverse solution of the stacked
/// system [sqrt(rho) F_RF; sqrt(1-rho) F_RF] F_BB = [sqrt(rho) F_opt;
/// sqrt(1-rho) F_rad]. Requires F_RF full column rank (tolerance 1e-10).
Eigen::MatrixXcd digital_step(const Eigen::MatrixXcd& f_rf,
                              const Eigen::MatrixXcd& f_opt,
                              const Eigen::MatrixXcd& f_rad_aligned, double rho);

/// Analog update on the complex circle: optimizes vec(F_RF) under the map
/// p -> (F_BB^T ⊗ I) p by warm-started Riemannian conjugate gradient.
Eigen::MatrixXcd analog_step(const Eigen::MatrixXcd& f_bb,
                             const Eigen::MatrixXcd& f_opt,
                             const Eigen::MatrixXcd& f_rad_aligned, double rho,
                             const Eigen::MatrixXcd& f_rf_init,
                             const CgOptions& options = {});

/// Alternates digital and analog steps until the relative objective decrease
/// falls below outer_tol, then scales F_BB so |F_RF F_BB|_F^2 = n_streams.
HybridBeamformer alternating_minimize(const HybridConfig& config,
                                      const Eigen::MatrixXcd& f_opt,
                                      const Eigen::MatrixXcd& f_rad_aligned);

}  // namespace vbaisac
