#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "vbaisac/arrays.hpp"
#include "vbaisac/sdp.hpp"

namespace vbaisac {

struct TradeoffConfig {
  double rho = 0.5;  // in [0, 1]
  int n_streams = 3;
};

/// A = [sqrt(rho) I; sqrt(1-rho) I], B = [sqrt(rho) F_opt; sqrt(1-rho) F_rad].
struct StackedTargets {
  Eigen::MatrixXcd a_matrix;  // 2 n_tx x n_tx
  Eigen::MatrixXcd b_matrix;  // 2 n_tx x n_streams
};

/// Homogenized quadratic form: [vec(F); t]^H C [vec(F); t] = |A F - t B|_F^2,
/// with A_1 selecting |F|_F^2 and A_2 selecting t^2.
struct QcqpForm {
  Eigen::MatrixXcd c_matrix;
  Eigen::MatrixXcd a1;
  Eigen::MatrixXcd a2;
  int n_streams = 0;
};

enum class FdMethod { sdr, closed_form };

struct FdBeamformer {
  Eigen::MatrixXcd matrix;  // n_tx x n_streams, |F|_F^2 = n_streams
  double objective = 0.0;   // |A F - B|_F^2
  FdMethod method = FdMethod::closed_form;
  // Diagnostics populated by the SDR path.
  double sdp_value = 0.0;
  double eigen_ratio = 0.0;  // lambda_1 / lambda_2 of the relaxed solution
  SdpStatus sdp_status = SdpStatus::optimal;
};

/// Reshapes the radar beamformer to n_streams columns and scales it onto the
/// power sphere |.|_F = sqrt(n_streams). With K = n_streams this is a pure
/// scaling; with K < n_streams the columns are spread by the first K rows of
/// an n_streams-point unitary DFT, which preserves the covariance shape; with
/// K > n_streams the first n_streams columns of a K-point unitary DFT project
/// the beams down. f_opt is used for dimension validation only.
Eigen::MatrixXcd align_radar_target(const RadarBeamformer& f_rad, int n_streams,
                                    const Eigen::MatrixXcd& f_opt);
Eigen::MatrixXcd align_radar_target(const Eigen::MatrixXcd& f_rad, int n_streams);

StackedTargets stack_targets(const Eigen::MatrixXcd& f_opt,
                             const Eigen::MatrixXcd& f_rad_aligned,
                             const TradeoffConfig& config);

/// rho |F - F_opt|_F^2 + (1 - rho) |F - F_rad|_F^2, the quantity both solvers
/// minimize subject to |F|_F^2 = n_streams. Equals |A F - B|_F^2.
double tradeoff_objective(const Eigen::MatrixXcd& f, const Eigen::MatrixXcd& f_opt,
                          const Eigen::MatrixXcd& f_rad_aligned, double rho);

/// Global optimum on the power sphere: F = sqrt(Ns) M / |M|_F with
/// M = rho F_opt + (1 - rho) F_rad (A^H A = I makes the objective linear in F
/// on the sphere).
FdBeamformer closed_form_solution(const Eigen::MatrixXcd& f_opt,
                                  const Eigen::MatrixXcd& f_rad_aligned,
                                  const TradeoffConfig& config);

QcqpForm homogenize(const StackedTargets& targets, int n_streams);

struct SdrOptions {
  double sdp_tol = 1e-7;
  int sdp_max_iter = 100;
  // Gaussian randomization refinement of the extracted point (off by default;
  // the dominant-eigenvector extraction is near-tight for this problem).
  bool randomize = false;
  int randomize_draws = 100;
  std::uint64_t randomize_seed = 0;
};

/// Relax, solve the SDP, extract the dominant eigenvector, fix the sign/phase
/// through the homogenization variable, and rescale onto the power sphere.
FdBeamformer solve_sdr(const QcqpForm& form, const SdrOptions& options = {});

}  // namespace vbaisac
