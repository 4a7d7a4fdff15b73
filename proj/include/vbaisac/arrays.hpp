#pragma once

#include <Eigen/Dense>
#include <vector>

#include "vbaisac/kinematics.hpp"

namespace vbaisac {

/// Uniform linear array. Only the spacing-to-wavelength ratio enters the
/// steering phases.
struct ArrayConfig {
  int n_antennas = 1;
  double spacing_over_wavelength = 0.5;
};

/// Radar range equation parameters. Antenna allocation depends only on the
/// fourth-power proportionality, so these are carried for completeness and
/// exposed through range_constant().
struct RadarLinkBudget {
  double antenna_gain = 1.0;          // G
  double wavelength = 1.0;            // meters
  double rcs = 1.0;                   // radar cross section, m^2
  double min_detectable_power = 1.0;  // watts
  double per_antenna_power = 1.0;     // watts

  /// Omega in d_max = Omega * (N_k * P0)^(1/4).
  double range_constant() const;

  /// Largest reliably-sensed distance for a subarray of n antennas.
  double max_range(int n_antennas) const;
};

/// Block-diagonal subarray beamformer: column k holds a steering vector of
/// length subarray_sizes[k] at pointing_angles[k], on contiguous antenna
/// rows in waypoint order. All nonzero entries are unit modulus and the
/// squared Frobenius norm equals the total antenna count.
struct RadarBeamformer {
  Eigen::MatrixXcd matrix;             // n_antennas x K
  std::vector<double> pointing_angles; // radians
  std::vector<int> subarray_sizes;
};

struct Beampattern {
  std::vector<double> grid;   // radians, strictly increasing
  std::vector<double> power;  // non-negative, linear scale
};

/// a(theta) = [1, e^{j*2*pi*(d/lambda)*sin(theta)}, ...] of the given length.
Eigen::VectorXcd steering_vector(const ArrayConfig& config, double angle, int length);

/// theta_k = arctan(dx_k / dy_k), measured from the +y driving axis.
/// Throws on a waypoint with zero displacement.
std::vector<double> pointing_angles(const Aoi& aoi);

/// d_k = sqrt(dx_k^2 + dy_k^2) + sensing disk radius.
std::vector<double> sensing_distances(const Aoi& aoi);

/// Splits `total` antennas proportionally to distance^4 using largest-remainder
/// rounding, with at least one antenna per subarray. Throws when total < K.
std::vector<int> allocate_antennas(const std::vector<double>& distances, int total);

/// Assembles the block-diagonal beamformer; subarray phases are indexed from
/// zero within each block.
RadarBeamformer synthesize_radar_beamformer(const std::vector<double>& angles,
                                            const std::vector<int>& sizes,
                                            const ArrayConfig& config);

/// P(theta) = a^H(theta) R a(theta) per grid point. The covariance must be
/// Hermitian positive semidefinite (eigenvalue tolerance 1e-9 relative).
Beampattern beampattern(const Eigen::MatrixXcd& covariance, const ArrayConfig& config,
                        const std::vector<double>& grid);

/// Uniform grid in degrees converted to radians, inclusive of both ends.
std::vector<double> angle_grid_deg(double lo_deg, double hi_deg, double step_deg);

}  // namespace vbaisac
