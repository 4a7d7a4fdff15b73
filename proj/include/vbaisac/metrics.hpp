#pragma once

#include <Eigen/Dense>

#include "vbaisac/arrays.hpp"
#include "vbaisac/channel.hpp"

namespace vbaisac {

/// Only the ratio rx_power / noise_variance enters the rate.
struct LinkBudget {
  double rx_power = 1.0;
  double noise_variance = 1.0;
  double snr() const { return rx_power / noise_variance; }
};

/// Per-component transmitter power draw, watts.
struct PowerModel {
  double p_bb = 10.0;   // digital baseband
  double p_rf = 0.3;    // per RF chain
  double p_pa = 0.1;    // per power amplifier
  double p_ps = 0.01;   // per phase shifter
};

enum class Architecture { full_digital, hybrid };

/// R = log2 det(I + snr * (W H F)(W H F)^H) in bits/s/Hz. For a hybrid
/// precoder pass F = F_RF * F_BB.
double spectral_efficiency(const Eigen::MatrixXcd& channel,
                           const Eigen::MatrixXcd& combiner,
                           const Eigen::MatrixXcd& precoder,
                           const LinkBudget& budget);

/// Rate of the SVD-optimal pair for the given stream count.
double spectral_efficiency_upper(const Eigen::MatrixXcd& channel, int n_streams,
                                 const LinkBudget& budget);

double power_sum(Architecture arch, int n_tx, int n_rf, const PowerModel& model);

double energy_efficiency(double rate, double total_power);

/// Mean squared difference of the two patterns after each is divided by its
/// own maximum. Grids must match exactly.
double beampattern_mse(const Beampattern& achieved, const Beampattern& desired);

}  // namespace vbaisac
