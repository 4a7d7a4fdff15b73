#include "vbaisac/arrays.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vbaisac {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double RadarLinkBudget::range_constant() const {
  const double num = antenna_gain * antenna_gain * wavelength * wavelength * rcs;
  const double den = 64.0 * kPi * kPi * kPi * min_detectable_power;
  return std::pow(num / den, 0.25);
}

double RadarLinkBudget::max_range(int n_antennas) const {
  return range_constant() * std::pow(n_antennas * per_antenna_power, 0.25);
}

Eigen::VectorXcd steering_vector(const ArrayConfig& config, double angle, int length) {
  if (length < 1) throw std::invalid_argument("steering vector length must be >= 1");
  Eigen::VectorXcd v(length);
  const double phase_step = 2.0 * kPi * config.spacing_over_wavelength * std::sin(angle);
  for (int i = 0; i < length; ++i)
    v(i) = std::polar(1.0, phase_step * i);
  return v;
}

std::vector<double> pointing_angles(const Aoi& aoi) {
  std::vector<double> angles;
  angles.reserve(aoi.waypoints.size());
  for (const AoiWaypoint& w : aoi.waypoints) {
    if (w.dx == 0.0 && w.dy == 0.0)
      throw std::invalid_argument("degenerate waypoint: zero displacement has no pointing angle");
    angles.push_back(std::atan2(w.dx, w.dy));
  }
  return angles;
}

std::vector<double> sensing_distances(const Aoi& aoi) {
  std::vector<double> out;
  out.reserve(aoi.waypoints.size());
  for (const AoiWaypoint& w : aoi.waypoints)
    out.push_back(std::hypot(w.dx, w.dy) + w.radius);
  return out;
}

std::vector<int> allocate_antennas(const std::vector<double>& distances, int total) {
  const int k = static_cast<int>(distances.size());
  if (k == 0) throw std::invalid_argument("allocation needs at least one distance");
  if (total < k)
    throw std::invalid_argument("insufficient antennas: fewer antennas than subarrays");
  for (double d : distances)
    if (!(d > 0.0)) throw std::invalid_argument("distances must be positive");

  double weight_sum = 0.0;
  std::vector<double> w(k);
  for (int i = 0; i < k; ++i) {
    w[i] = distances[i] * distances[i] * distances[i] * distances[i];
    weight_sum += w[i];
  }

  std::vector<int> alloc(k);
  std::vector<double> remainder(k);
  int assigned = 0;
  for (int i = 0; i < k; ++i) {
    const double share = total * w[i] / weight_sum;
    alloc[i] = static_cast<int>(std::floor(share));
    remainder[i] = share - alloc[i];
    assigned += alloc[i];
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
    return distances[a] > distances[b];
  });
  for (int i = 0; i < total - assigned; ++i) ++alloc[order[i % k]];

  // Floor of one antenna per subarray, funded by the largest allocation.
  for (int i = 0; i < k; ++i) {
    while (alloc[i] < 1) {
      int donor = static_cast<int>(std::max_element(alloc.begin(), alloc.end()) - alloc.begin());
      if (alloc[donor] <= 1) throw std::invalid_argument("insufficient antennas for floor of one");
      --alloc[donor];
      ++alloc[i];
    }
  }
  return alloc;
}

RadarBeamformer synthesize_radar_beamformer(const std::vector<double>& angles,
                                            const std::vector<int>& sizes,
                                            const ArrayConfig& config) {
  if (angles.size() != sizes.size())
    throw std::invalid_argument("size mismatch: angle and subarray lists differ in length");
  const int k = static_cast<int>(angles.size());
  const int total = std::accumulate(sizes.begin(), sizes.end(), 0);
  if (total != config.n_antennas)
    throw std::invalid_argument("size mismatch: subarray sizes must sum to the antenna count");

  RadarBeamformer bf;
  bf.matrix = Eigen::MatrixXcd::Zero(config.n_antennas, k);
  bf.pointing_angles = angles;
  bf.subarray_sizes = sizes;
  int offset = 0;
  for (int c = 0; c < k; ++c) {
    if (sizes[c] < 1) throw std::invalid_argument("subarray sizes must be >= 1");
    bf.matrix.block(offset, c, sizes[c], 1) = steering_vector(config, angles[c], sizes[c]);
    offset += sizes[c];
  }
  return bf;
}

Beampattern beampattern(const Eigen::MatrixXcd& covariance, const ArrayConfig& config,
                        const std::vector<double>& grid) {
  const int n = config.n_antennas;
  if (covariance.rows() != n || covariance.cols() != n)
    throw std::invalid_argument("covariance dimension does not match the array");
  const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
  if ((covariance - covariance.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("non-hermitian input covariance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(covariance,
                                                      Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-9 * std::max(1.0, eig.eigenvalues().maxCoeff()))
    throw std::invalid_argument("covariance is not positive semidefinite");

  Beampattern p;
  p.grid = grid;
  p.power.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXcd a = steering_vector(config, grid[i], n);
    const std::complex<double> val = a.dot(covariance * a);
    p.power[i] = std::max(val.real(), 0.0);
  }
  return p;
}

std::vector<double> angle_grid_deg(double lo_deg, double hi_deg, double step_deg) {
  if (!(step_deg > 0.0) || !(hi_deg > lo_deg))
    throw std::invalid_argument("invalid beampattern grid bounds");
  std::vector<double> grid;
  const int n = static_cast<int>(std::round((hi_deg - lo_deg) / step_deg));
  grid.reserve(n + 1);
  for (int i = 0; i <= n; ++i)
    grid.push_back((lo_deg + i * step_deg) * kPi / 180.0);
  return grid;
}

}  // namespace vbaisac
