#include "vbaisac/fd_solver.hpp"

#include <cmath>
#include <stdexcept>

#include "vbaisac/rng.hpp"

namespace vbaisac {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXcd unitary_dft(int n) {
  Eigen::MatrixXcd d(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      d(r, c) = std::polar(scale, -2.0 * kPi * r * c / n);
  return d;
}

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::invalid_argument("trade-off factor must lie in [0, 1]");
}

}  // namespace

Eigen::MatrixXcd align_radar_target(const Eigen::MatrixXcd& f_rad, int n_streams) {
  if (n_streams < 1) throw std::invalid_argument("stream count must be >= 1");
  const int k = static_cast<int>(f_rad.cols());
  Eigen::MatrixXcd shaped;
  if (k == n_streams) {
    shaped = f_rad;
  } else if (k < n_streams) {
    shaped = f_rad * unitary_dft(n_streams).topRows(k);
  } else {
    shaped = f_rad * unitary_dft(k).leftCols(n_streams);
  }
  const double norm = shaped.norm();
  if (norm < 1e-12) throw std::invalid_argument("radar target is numerically zero");
  return shaped * (std::sqrt(static_cast<double>(n_streams)) / norm);
}

Eigen::MatrixXcd align_radar_target(const RadarBeamformer& f_rad, int n_streams,
                                    const Eigen::MatrixXcd& f_opt) {
  if (f_opt.rows() != f_rad.matrix.rows() || f_opt.cols() != n_streams)
    throw std::invalid_argument("optimal beamformer dimensions do not match the array");
  return align_radar_target(f_rad.matrix, n_streams);
}

StackedTargets stack_targets(const Eigen::MatrixXcd& f_opt,
                             const Eigen::MatrixXcd& f_rad_aligned,
                             const TradeoffConfig& config) {
  check_rho(config.rho);
  if (f_opt.rows() != f_rad_aligned.rows() || f_opt.cols() != f_rad_aligned.cols())
    throw std::invalid_argument("dimension mismatch between communication and radar targets");
  if (f_opt.cols() != config.n_streams)
    throw std::invalid_argument("target column count must equal the stream count");

  const Eigen::Index n = f_opt.rows();
  const double wr = std::sqrt(config.rho);
  const double ws = std::sqrt(1.0 - config.rho);
  StackedTargets t;
  t.a_matrix = Eigen::MatrixXcd::Zero(2 * n, n);
  t.a_matrix.topRows(n) = wr * Eigen::MatrixXcd::Identity(n, n);
  t.a_matrix.bottomRows(n) = ws * Eigen::MatrixXcd::Identity(n, n);
  t.b_matrix.resize(2 * n, f_opt.cols());
  t.b_matrix.topRows(n) = wr * f_opt;
  t.b_matrix.bottomRows(n) = ws * f_rad_aligned;
  return t;
}

double tradeoff_objective(const Eigen::MatrixXcd& f, const Eigen::MatrixXcd& f_opt,
                          const Eigen::MatrixXcd& f_rad_aligned, double rho) {
  check_rho(rho);
  return rho * (f - f_opt).squaredNorm() + (1.0 - rho) * (f - f_rad_aligned).squaredNorm();
}

FdBeamformer closed_form_solution(const Eigen::MatrixXcd& f_opt,
                                  const Eigen::MatrixXcd& f_rad_aligned,
                                  const TradeoffConfig& config) {
  check_rho(config.rho);
  const Eigen::MatrixXcd m = config.rho * f_opt + (1.0 - config.rho) * f_rad_aligned;
  const double norm = m.norm();
  if (norm < 1e-12)
    throw std::invalid_argument("degenerate target: the weighted target is numerically zero");
  FdBeamformer out;
  out.method = FdMethod::closed_form;
  out.matrix = m * (std::sqrt(static_cast<double>(config.n_streams)) / norm);
  out.objective = tradeoff_objective(out.matrix, f_opt, f_rad_aligned, config.rho);
  return out;
}

QcqpForm homogenize(const StackedTargets& targets, int n_streams) {
  const Eigen::Index n_tx = targets.a_matrix.cols();
  const Eigen::Index dim = n_tx * n_streams + 1;

  // (I ⊗ A)^H (I ⊗ A) = I ⊗ (A^H A) and (I ⊗ A)^H vec(B) = vec(A^H B).
  const Eigen::MatrixXcd gram = targets.a_matrix.adjoint() * targets.a_matrix;
  const Eigen::MatrixXcd ahb = targets.a_matrix.adjoint() * targets.b_matrix;
  Eigen::Map<const Eigen::VectorXcd> vec_ahb(ahb.data(), ahb.size());

  QcqpForm form;
  form.n_streams = n_streams;
  form.c_matrix = Eigen::MatrixXcd::Zero(dim, dim);
  for (int s = 0; s < n_streams; ++s)
    form.c_matrix.block(s * n_tx, s * n_tx, n_tx, n_tx) = gram;
  form.c_matrix.block(0, dim - 1, dim - 1, 1) = -vec_ahb;
  form.c_matrix.block(dim - 1, 0, 1, dim - 1) = -vec_ahb.adjoint();
  form.c_matrix(dim - 1, dim - 1) = targets.b_matrix.squaredNorm();

  form.a1 = Eigen::MatrixXcd::Zero(dim, dim);
  form.a1.topLeftCorner(dim - 1, dim - 1) =
      Eigen::MatrixXcd::Identity(dim - 1, dim - 1);
  form.a2 = Eigen::MatrixXcd::Zero(dim, dim);
  form.a2(dim - 1, dim - 1) = 1.0;
  return form;
}

FdBeamformer solve_sdr(const QcqpForm& form, const SdrOptions& options) {
  const Eigen::Index dim = form.c_matrix.rows();
  const Eigen::Index n_vec = dim - 1;
  if (n_vec % form.n_streams != 0)
    throw std::invalid_argument("QCQP dimension is inconsistent with the stream count");
  const Eigen::Index n_tx = n_vec / form.n_streams;

  SdpProblem problem;
  problem.objective = form.c_matrix;
  problem.constraints = {{form.a1, static_cast<double>(form.n_streams)}, {form.a2, 1.0}};
  SdpSolution sdp = vbaisac::solve(problem, options.sdp_tol, options.sdp_max_iter);
  if (sdp.status == SdpStatus::infeasible)
    throw std::runtime_error("SDP relaxation reported infeasibility");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sdp.x_matrix);
  const Eigen::VectorXd& lam = eig.eigenvalues();  // ascending
  const double lam_max = std::max(lam(dim - 1), 0.0);
  Eigen::VectorXcd u = eig.eigenvectors().col(dim - 1) * std::sqrt(lam_max);

  const std::complex<double> t_part = u(dim - 1);
  Eigen::VectorXcd f_vec = u.head(n_vec);
  if (std::abs(t_part) >= 1e-8) {
    f_vec *= std::conj(t_part) / std::abs(t_part);
  } else {
    // Degenerate homogenization variable: fall back to a deterministic
    // global-phase convention on the vector part.
    Eigen::Index imax = 0;
    f_vec.cwiseAbs().maxCoeff(&imax);
    if (std::abs(f_vec(imax)) > 0.0)
      f_vec *= std::conj(f_vec(imax)) / std::abs(f_vec(imax));
  }

  const auto homogeneous_objective = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd z(dim);
    z.head(n_vec) = v;
    z(dim - 1) = 1.0;
    return std::real(z.dot(form.c_matrix * z));
  };
  const auto to_sphere = [&](Eigen::VectorXcd v) {
    const double norm = v.norm();
    if (norm < 1e-14) throw std::runtime_error("SDR extraction produced a zero beamformer");
    return Eigen::VectorXcd(v * (std::sqrt(static_cast<double>(form.n_streams)) / norm));
  };

  f_vec = to_sphere(f_vec);
  double best_obj = homogeneous_objective(f_vec);

  if (options.randomize) {
    // Draws f ~ CN(0, X) through the eigenfactorization, phase-fixes t and
    // projects onto the sphere; keeps the best candidate.
    Rng rng(options.randomize_seed);
    Eigen::MatrixXcd half = eig.eigenvectors() *
                            lam.cwiseMax(0.0).cwiseSqrt().asDiagonal();
    for (int d = 0; d < options.randomize_draws; ++d) {
      Eigen::VectorXcd g(dim);
      for (Eigen::Index i = 0; i < dim; ++i) g(i) = rng.complex_gaussian(1.0);
      Eigen::VectorXcd cand = half * g;
      const std::complex<double> t = cand(dim - 1);
      if (std::abs(t) < 1e-12) continue;
      Eigen::VectorXcd v = to_sphere(cand.head(n_vec) * (std::conj(t) / std::abs(t)));
      const double obj = homogeneous_objective(v);
      if (obj < best_obj) {
        best_obj = obj;
        f_vec = v;
      }
    }
  }

  FdBeamformer out;
  out.method = FdMethod::sdr;
  out.matrix = Eigen::Map<const Eigen::MatrixXcd>(f_vec.data(), n_tx, form.n_streams);
  out.objective = best_obj;
  out.sdp_value = sdp.primal_value;
  out.sdp_status = sdp.status;
  const double lam2 = dim >= 2 ? std::max(lam(dim - 2), 0.0) : 0.0;
  out.eigen_ratio = lam2 > 0.0 ? lam_max / lam2 : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace vbaisac
