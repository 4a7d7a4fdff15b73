#include "vbaisac/channel.hpp"

#include <stdexcept>

#include "vbaisac/arrays.hpp"
#include "vbaisac/rng.hpp"

namespace vbaisac {

Channel generate_channel(const ChannelConfig& config, std::uint64_t seed) {
  if (config.n_tx < 1 || config.n_rx < 1 || config.n_paths < 1)
    throw std::invalid_argument("channel dimensions must be >= 1");
  if (!(config.gain_variance > 0.0))
    throw std::invalid_argument("gain variance must be positive");

  Rng rng(seed);
  ArrayConfig tx{config.n_tx, config.spacing_over_wavelength};
  ArrayConfig rx{config.n_rx, config.spacing_over_wavelength};

  Channel ch;
  ch.matrix = Eigen::MatrixXcd::Zero(config.n_rx, config.n_tx);
  ch.paths.reserve(config.n_paths);
  for (int l = 0; l < config.n_paths; ++l) {
    PathComponent p;
    p.gain = rng.complex_gaussian(config.gain_variance);
    p.aod = rng.uniform(config.angle_min, config.angle_max);
    p.aoa = rng.uniform(config.angle_min, config.angle_max);
    ch.matrix.noalias() +=
        p.gain * steering_vector(rx, p.aoa, config.n_rx) *
        steering_vector(tx, p.aod, config.n_tx).adjoint();
    ch.paths.push_back(p);
  }
  return ch;
}

int numerical_rank(const Eigen::MatrixXcd& matrix) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double thresh = 1e-9 * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++rank;
  return rank;
}

OptimalPair optimal_beamformers(const Eigen::MatrixXcd& channel, int n_streams) {
  if (n_streams < 1) throw std::invalid_argument("stream count must be >= 1");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(channel,
                                         Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double thresh = s.size() ? 1e-9 * s(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++rank;
  if (n_streams > rank)
    throw std::invalid_argument("rank deficient: stream count exceeds the channel rank");

  OptimalPair pair;
  pair.f_opt = svd.matrixV().leftCols(n_streams);
  pair.w_opt = svd.matrixU().leftCols(n_streams).adjoint();

  // Deterministic phase convention: the largest-magnitude entry of each right
  // singular vector is made real positive; the matching left vector co-rotates
  // so U * S * V^H is unchanged.
  for (int c = 0; c < n_streams; ++c) {
    Eigen::Index imax = 0;
    pair.f_opt.col(c).cwiseAbs().maxCoeff(&imax);
    const std::complex<double> z = pair.f_opt(imax, c);
    if (std::abs(z) > 0.0) {
      const std::complex<double> rot = std::conj(z) / std::abs(z);
      pair.f_opt.col(c) *= rot;
      pair.w_opt.row(c) *= std::conj(rot);
    }
  }
  return pair;
}

OptimalPair optimal_beamformers(const Channel& channel, int n_streams) {
  return optimal_beamformers(channel.matrix, n_streams);
}

Channel perturb(const Channel& channel, double sigma_e, std::uint64_t seed) {
  if (sigma_e < 0.0) throw std::invalid_argument("sigma_e must be non-negative");
  Channel out;
  out.matrix = channel.matrix;
  if (sigma_e > 0.0) {
    Rng rng(seed);
    for (Eigen::Index j = 0; j < out.matrix.cols(); ++j)
      for (Eigen::Index i = 0; i < out.matrix.rows(); ++i)
        out.matrix(i, j) += rng.complex_gaussian(sigma_e * sigma_e);
  }
  return out;
}

}  // namespace vbaisac
