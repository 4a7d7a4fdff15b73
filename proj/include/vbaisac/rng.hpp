#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace vbaisac {

/// Deterministic random source for channel draws and solver initialization.
///
/// The core engine is std::mt19937_64, which is bit-exact across platforms.
/// Uniform and Gaussian variates are derived from raw 64-bit words here
/// instead of std::*_distribution (whose output is implementation-defined),
/// so a seed pins the entire variate sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller. Two uniforms per call, no cached spare.
  double gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Circularly-symmetric complex Gaussian CN(0, variance).
  std::complex<double> complex_gaussian(double variance) {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1) * variance);
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64_step(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream-splitting rule: one child seed per (experiment, realization) pair
/// under a master seed. Parallel sweeps must derive one child per index and
/// never share a generator across workers.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t experiment,
                                 std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64_step(s);
  s = h ^ (0xa0761d6478bd642fULL * (experiment + 1));
  h = splitmix64_step(s);
  s = h ^ (0xe7037ed1a0b428dbULL * (index + 1));
  return splitmix64_step(s);
}

}  // namespace vbaisac
