#include "vbaisac/hybrid_solver.hpp"

#include <cmath>
#include <stdexcept>

#include "vbaisac/rng.hpp"

namespace vbaisac {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_dims(const Eigen::MatrixXcd& f_opt, const Eigen::MatrixXcd& f_rad) {
  if (f_opt.rows() != f_rad.rows() || f_opt.cols() != f_rad.cols())
    throw std::invalid_argument("target matrices must share dimensions");
}

}  // namespace

double hybrid_objective(const Eigen::MatrixXcd& f_rf, const Eigen::MatrixXcd& f_bb,
                        const Eigen::MatrixXcd& f_opt,
                        const Eigen::MatrixXcd& f_rad_aligned, double rho) {
  const Eigen::MatrixXcd product = f_rf * f_bb;
  return rho * (product - f_opt).squaredNorm() +
         (1.0 - rho) * (product - f_rad_aligned).squaredNorm();
}

Eigen::MatrixXcd digital_step(const Eigen::MatrixXcd& f_rf,
                              const Eigen::MatrixXcd& f_opt,
                              const Eigen::MatrixXcd& f_rad_aligned, double rho) {
  check_dims(f_opt, f_rad_aligned);
  if (f_rf.rows() != f_opt.rows())
    throw std::invalid_argument("analog beamformer rows must match the antenna count");

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f_rf);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * sv(0))
    throw std::invalid_argument("rank deficient analog beamformer in digital step");

  const Eigen::Index n = f_rf.rows();
  const double wr = std::sqrt(rho);
  const double ws = std::sqrt(1.0 - rho);
  Eigen::MatrixXcd a(2 * n, f_rf.cols());
  a.topRows(n) = wr * f_rf;
  a.bottomRows(n) = ws * f_rf;
  Eigen::MatrixXcd b(2 * n, f_opt.cols());
  b.topRows(n) = wr * f_opt;
  b.bottomRows(n) = ws * f_rad_aligned;
  return a.completeOrthogonalDecomposition().solve(b);
}

Eigen::MatrixXcd analog_step(const Eigen::MatrixXcd& f_bb,
                             const Eigen::MatrixXcd& f_opt,
                             const Eigen::MatrixXcd& f_rad_aligned, double rho,
                             const Eigen::MatrixXcd& f_rf_init,
                             const CgOptions& options) {
  check_dims(f_opt, f_rad_aligned);
  const Eigen::Index n_tx = f_opt.rows();
  if (f_rf_init.rows() != n_tx || f_rf_init.cols() != f_bb.rows())
    throw std::invalid_argument("analog initializer dimensions do not match");

  // vec(F_RF F_BB) = (F_BB^T ⊗ I) vec(F_RF).
  Eigen::Map<const Eigen::VectorXcd> b_opt(f_opt.data(), f_opt.size());
  Eigen::Map<const Eigen::VectorXcd> b_rad(f_rad_aligned.data(), f_rad_aligned.size());
  QuadraticObjective obj =
      QuadraticObjective::two_target_kron(f_bb.transpose(), n_tx, b_opt, b_rad, rho);

  Eigen::Map<const Eigen::VectorXcd> init_flat(f_rf_init.data(), f_rf_init.size());
  Eigen::VectorXcd p0(f_rf_init.size());
  for (Eigen::Index i = 0; i < p0.size(); ++i) {
    const std::complex<double> z = init_flat(i);
    p0(i) = std::abs(z) > 0.0 ? z / std::abs(z) : std::complex<double>(1.0, 0.0);
  }
  CgResult res = riemannian_cg(obj, CirclePoint{std::move(p0)}, options);
  return Eigen::Map<const Eigen::MatrixXcd>(res.point.entries.data(), n_tx,
                                            f_rf_init.cols());
}

HybridBeamformer alternating_minimize(const HybridConfig& config,
                                      const Eigen::MatrixXcd& f_opt,
                                      const Eigen::MatrixXcd& f_rad_aligned) {
  check_dims(f_opt, f_rad_aligned);
  const Eigen::Index n_tx = f_opt.rows();
  const int n_streams = static_cast<int>(f_opt.cols());
  if (config.n_rf < n_streams || config.n_rf > n_tx)
    throw std::invalid_argument("RF chain count must satisfy n_streams <= n_rf <= n_tx");
  if (config.outer_max < 1)
    throw std::invalid_argument("outer iteration budget must be >= 1");

  HybridBeamformer hb;
  hb.f_rf.resize(n_tx, config.n_rf);
  if (config.target_phase_init) {
    // Phases of the weighted target; column repeats get a progressive phase
    // ramp so the analog matrix keeps full column rank.
    const Eigen::MatrixXcd m = config.rho * f_opt + (1.0 - config.rho) * f_rad_aligned;
    for (int c = 0; c < config.n_rf; ++c) {
      const int repeat = c / n_streams;
      for (Eigen::Index r = 0; r < n_tx; ++r) {
        const std::complex<double> z = m(r, c % n_streams);
        const double ramp = 2.0 * kPi * repeat * double(r) / double(n_tx);
        hb.f_rf(r, c) = (std::abs(z) > 1e-14 ? z / std::abs(z)
                                             : std::complex<double>(1.0, 0.0)) *
                        std::polar(1.0, ramp);
      }
    }
  } else {
    Rng rng(config.seed);
    for (Eigen::Index c = 0; c < config.n_rf; ++c)
      for (Eigen::Index r = 0; r < n_tx; ++r)
        hb.f_rf(r, c) = std::polar(1.0, 2.0 * kPi * rng.uniform());
  }

  hb.f_bb = digital_step(hb.f_rf, f_opt, f_rad_aligned, config.rho);
  double obj = hybrid_objective(hb.f_rf, hb.f_bb, f_opt, f_rad_aligned, config.rho);
  hb.objective_trace.push_back(obj);

  for (int i = 0; i < config.outer_max; ++i) {
    hb.f_rf = analog_step(hb.f_bb, f_opt, f_rad_aligned, config.rho, hb.f_rf, config.cg);
    hb.f_bb = digital_step(hb.f_rf, f_opt, f_rad_aligned, config.rho);
    const double next = hybrid_objective(hb.f_rf, hb.f_bb, f_opt, f_rad_aligned, config.rho);
    hb.objective_trace.push_back(next);
    const double decrease = (obj - next) / std::max(1.0, std::abs(obj));
    obj = next;
    if (decrease < config.outer_tol) break;
  }

  // Power constraint on the product; F_RF keeps its unit-modulus entries.
  const double norm = (hb.f_rf * hb.f_bb).norm();
  if (norm < 1e-14) throw std::runtime_error("hybrid beamformer collapsed to zero");
  hb.f_bb *= std::sqrt(static_cast<double>(n_streams)) / norm;
  return hb;
}

}  // namespace vbaisac
