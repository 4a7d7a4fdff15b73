#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace vbaisac {

struct ChannelConfig {
  int n_tx = 81;
  int n_rx = 16;
  int n_paths = 10;
  double gain_variance = 1.0;
  double angle_min = -1.5707963267948966;  // radians
  double angle_max = 1.5707963267948966;
  double spacing_over_wavelength = 0.5;
};

struct PathComponent {
  std::complex<double> gain;
  double aod;  // angle of departure, radians
  double aoa;  // angle of arrival, radians
};

/// Multipath channel H = sum_l gain_l * a_rx(aoa_l) * a_tx(aod_l)^H, with no
/// extra normalization factor. `paths` is empty when the matrix no longer has
/// a path decomposition (e.g. after perturbation).
struct Channel {
  Eigen::MatrixXcd matrix;  // n_rx x n_tx
  std::vector<PathComponent> paths;
};

/// SVD-derived transmit/receive pair. f_opt columns are unit-norm right
/// singular vectors (total power n_streams); w_opt rows are the conjugated
/// top left singular vectors.
struct OptimalPair {
  Eigen::MatrixXcd f_opt;  // n_tx x n_streams
  Eigen::MatrixXcd w_opt;  // n_streams x n_rx
};

/// Draw order per path: complex gain, departure angle, arrival angle.
/// Deterministic for a fixed seed.
Channel generate_channel(const ChannelConfig& config, std::uint64_t seed);

/// Count of singular values above 1e-9 times the largest.
int numerical_rank(const Eigen::MatrixXcd& matrix);

OptimalPair optimal_beamformers(const Channel& channel, int n_streams);
OptimalPair optimal_beamformers(const Eigen::MatrixXcd& channel, int n_streams);

/// Adds i.i.d. CN(0, sigma_e^2) entries. The result keeps no path list.
Channel perturb(const Channel& channel, double sigma_e, std::uint64_t seed);

}  // namespace vbaisac
