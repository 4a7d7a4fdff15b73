#include "vbaisac/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace vbaisac {

double spectral_efficiency(const Eigen::MatrixXcd& channel,
                           const Eigen::MatrixXcd& combiner,
                           const Eigen::MatrixXcd& precoder,
                           const LinkBudget& budget) {
  if (combiner.cols() != channel.rows() || channel.cols() != precoder.rows())
    throw std::invalid_argument("dimension mismatch in spectral efficiency inputs");
  if (!(budget.rx_power > 0.0) || !(budget.noise_variance > 0.0))
    throw std::invalid_argument("link budget powers must be positive");

  const Eigen::MatrixXcd g = combiner * channel * precoder;
  const Eigen::Index ns = g.rows();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(ns, ns);
  m.noalias() += budget.snr() * g * g.adjoint();
  // m = I + PSD is Hermitian positive definite; log det via Cholesky.
  Eigen::LLT<Eigen::MatrixXcd> llt(m);
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < ns; ++i)
    logdet += 2.0 * std::log(std::real(llt.matrixL()(i, i)));
  return logdet / std::log(2.0);
}

double spectral_efficiency_upper(const Eigen::MatrixXcd& channel, int n_streams,
                                 const LinkBudget& budget) {
  const OptimalPair pair = optimal_beamformers(channel, n_streams);
  return spectral_efficiency(channel, pair.w_opt, pair.f_opt, budget);
}

double power_sum(Architecture arch, int n_tx, int n_rf, const PowerModel& model) {
  if (n_tx < 1) throw std::invalid_argument("antenna count must be >= 1");
  if (arch == Architecture::hybrid) {
    if (n_rf < 1) throw std::invalid_argument("RF chain count must be >= 1");
    return model.p_bb + n_rf * model.p_rf + n_tx * model.p_pa +
           static_cast<double>(n_rf) * n_tx * model.p_ps;
  }
  return model.p_bb + n_tx * (model.p_rf + model.p_pa + model.p_ps);
}

double energy_efficiency(double rate, double total_power) {
  if (!(total_power > 0.0)) throw std::invalid_argument("zero power");
  return rate / total_power;
}

double beampattern_mse(const Beampattern& achieved, const Beampattern& desired) {
  if (achieved.grid.size() != desired.grid.size() || achieved.grid != desired.grid)
    throw std::invalid_argument("grid mismatch between beampatterns");
  const std::size_t n = achieved.power.size();
  if (n == 0) return 0.0;
  double ma = 0.0, md = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma = std::max(ma, achieved.power[i]);
    md = std::max(md, desired.power[i]);
  }
  if (ma == 0.0 || md == 0.0)
    throw std::invalid_argument("cannot normalize an all-zero beampattern");
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = achieved.power[i] / ma - desired.power[i] / md;
    acc += d * d;
  }
  return acc / static_cast<double>(n);
}

}  // namespace vbaisac
