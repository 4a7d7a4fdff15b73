#include "vbaisac/sdp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vbaisac {

namespace {

constexpr double kStepFraction = 0.99;  // fraction-to-boundary cap

void check_hermitian(const Eigen::MatrixXcd& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SDP matrices must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument(std::string(what) + " must be Hermitian");
}

// Largest alpha with P + alpha * D still positive definite (up to the
// fraction-to-boundary cap applied by the caller), via the minimum eigenvalue
// of L^{-1} D L^{-T} where P = L L^T.
double max_step(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& d) {
  Eigen::MatrixXd half = llt.matrixL().solve(d);
  Eigen::MatrixXd b = llt.matrixL().solve(half.transpose());
  b = 0.5 * (b + b.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b, Eigen::EigenvaluesOnly);
  const double lam_min = eig.eigenvalues().minCoeff();
  if (lam_min >= -1e-16) return std::numeric_limits<double>::infinity();
  return -1.0 / lam_min;
}

struct RealProblem {
  Eigen::MatrixXd c;
  std::vector<Eigen::MatrixXd> a;
  Eigen::VectorXd b;
  int n = 0;
  // Diagonal constraint matrices get a cheaper inner-product path.
  std::vector<bool> diag;
  std::vector<Eigen::VectorXd> diag_a;
};

double frob_inner(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  return (x.array() * y.array()).sum();
}

Eigen::VectorXd apply_constraints(const RealProblem& rp, const Eigen::MatrixXd& x) {
  Eigen::VectorXd out(rp.b.size());
  for (Eigen::Index i = 0; i < rp.b.size(); ++i)
    out(i) = rp.diag[i] ? rp.diag_a[i].dot(x.diagonal()) : frob_inner(rp.a[i], x);
  return out;
}

}  // namespace

std::string trace_csv(const SdpSolution& solution) {
  std::string out = "iter,primal,dual,complementarity,primal_residual,dual_residual\n";
  char buf[160];
  for (const SdpIterate& it : solution.trace) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g,%.12g,%.12g\n", it.iter,
                  it.primal, it.dual, it.complementarity, it.primal_residual,
                  it.dual_residual);
    out += buf;
  }
  return out;
}

Eigen::MatrixXd realify(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = m.real();
  out.topRightCorner(n, n) = -m.imag();
  out.bottomLeftCorner(n, n) = m.imag();
  out.bottomRightCorner(n, n) = m.real();
  return out;
}

Eigen::MatrixXcd complexify(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows() / 2;
  Eigen::MatrixXd re = 0.5 * (m.topLeftCorner(n, n) + m.bottomRightCorner(n, n));
  Eigen::MatrixXd im = 0.5 * (m.bottomLeftCorner(n, n) - m.topRightCorner(n, n));
  Eigen::MatrixXcd out(n, n);
  out.real() = re;
  out.imag() = im;
  // Exact Hermitian symmetrization of the averaged parts.
  return 0.5 * (out + out.adjoint());
}

SdpSolution solve(const SdpProblem& problem, double tol, int max_iter) {
  check_hermitian(problem.objective, "objective");
  const int m = static_cast<int>(problem.constraints.size());
  for (const SdpConstraint& c : problem.constraints) {
    check_hermitian(c.matrix, "constraint");
    if (c.matrix.rows() != problem.objective.rows())
      throw std::invalid_argument("constraint dimension does not match the objective");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  RealProblem rp;
  rp.n = 2 * static_cast<int>(problem.objective.rows());
  rp.c = realify(problem.objective) * 0.5;
  rp.b.resize(m);
  rp.a.reserve(m);
  for (int i = 0; i < m; ++i) {
    rp.a.push_back(realify(problem.constraints[i].matrix));
    rp.b(i) = 2.0 * problem.constraints[i].rhs;
    const bool is_diag = (rp.a.back() - Eigen::MatrixXd(rp.a.back().diagonal().asDiagonal()))
                             .cwiseAbs()
                             .maxCoeff() == 0.0;
    rp.diag.push_back(is_diag);
    rp.diag_a.push_back(rp.a.back().diagonal());
  }

  const int n = rp.n;
  const double b_norm = rp.b.size() ? rp.b.cwiseAbs().maxCoeff() : 0.0;
  double a_norm = 1.0;
  for (const auto& a : rp.a) a_norm = std::max(a_norm, a.norm());
  const double c_norm = rp.c.norm();

  // SDPT3-style generous interior start.
  const double tau_p = std::max({10.0, std::sqrt(double(n)), n * (1.0 + b_norm) / (1.0 + a_norm)});
  const double tau_d = std::max({10.0, std::sqrt(double(n)), (1.0 + c_norm) / std::sqrt(double(n))});
  Eigen::MatrixXd x = tau_p * Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd s = tau_d * Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  SdpSolution sol;
  sol.status = SdpStatus::max_iter;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);

  double best_progress = std::numeric_limits<double>::infinity();
  int stall_count = 0;

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    Eigen::VectorXd rp_vec = rp.b - apply_constraints(rp, x);
    Eigen::MatrixXd rd = rp.c - s;
    for (int i = 0; i < m; ++i) rd.noalias() -= y(i) * rp.a[i];

    const double mu = frob_inner(x, s) / n;
    const double primal = frob_inner(rp.c, x);
    const double dual = rp.b.dot(y);
    const double gap_rel = std::abs(primal - dual) / (1.0 + std::abs(primal));
    const double pres = rp_vec.norm() / (1.0 + rp.b.norm());
    const double dres = rd.norm() / (1.0 + c_norm);

    sol.trace.push_back({iter, primal, dual, frob_inner(x, s), pres, dres});

    if (gap_rel < tol && pres < tol && dres < tol) {
      sol.status = SdpStatus::optimal;
      break;
    }

    // Divergence heuristic: no progress in the merit for many iterations
    // while residuals stay far from feasible.
    const double progress = pres + dres + gap_rel;
    if (progress < best_progress * 0.999) {
      best_progress = progress;
      stall_count = 0;
    } else if (++stall_count > 20 && (pres > 1e3 || dres > 1e3)) {
      sol.status = SdpStatus::infeasible;
      break;
    }

    Eigen::LLT<Eigen::MatrixXd> llt_x(x);
    Eigen::LLT<Eigen::MatrixXd> llt_s(s);
    if (llt_x.info() != Eigen::Success || llt_s.info() != Eigen::Success) break;
    Eigen::MatrixXd s_inv = llt_s.solve(identity);

    // Schur complement M_ij = <A_i, X A_j S^{-1}> and the Rd contribution.
    std::vector<Eigen::MatrixXd> xas(m);
    for (int j = 0; j < m; ++j) {
      if (rp.diag[j])
        xas[j].noalias() = (x * rp.diag_a[j].asDiagonal()) * s_inv;
      else
        xas[j].noalias() = x * (rp.a[j] * s_inv);
    }
    Eigen::MatrixXd schur(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        schur(i, j) = rp.diag[i] ? rp.diag_a[i].dot(xas[j].diagonal())
                                 : frob_inner(rp.a[i], xas[j]);
    schur = 0.5 * (schur + schur.transpose()).eval();
    Eigen::LDLT<Eigen::MatrixXd> schur_fact(schur);
    if (schur_fact.info() != Eigen::Success)
      throw std::runtime_error("SDP Schur system is singular; constraints may be dependent");

    Eigen::MatrixXd x_rd_sinv = x * (rd * s_inv);
    Eigen::VectorXd g(m);
    for (int i = 0; i < m; ++i)
      g(i) = rp.diag[i] ? rp.diag_a[i].dot(x_rd_sinv.diagonal()) : frob_inner(rp.a[i], x_rd_sinv);

    // Solves the Newton system for complementarity target E (i.e. wanting
    // dX S + X dS = E): returns (dx, dy, ds).
    const auto newton = [&](const Eigen::MatrixXd& e, Eigen::MatrixXd& dx,
                            Eigen::VectorXd& dy, Eigen::MatrixXd& ds) {
      Eigen::MatrixXd e_sinv = e * s_inv;
      Eigen::VectorXd h(m);
      for (int i = 0; i < m; ++i)
        h(i) = rp.diag[i] ? rp.diag_a[i].dot(e_sinv.diagonal()) : frob_inner(rp.a[i], e_sinv);
      dy = schur_fact.solve(rp_vec - h + g);
      ds = rd;
      for (int i = 0; i < m; ++i) ds.noalias() -= dy(i) * rp.a[i];
      dx = e_sinv - x * (ds * s_inv);
      dx = 0.5 * (dx + dx.transpose()).eval();
    };

    // Predictor (affine scaling).
    Eigen::MatrixXd dx_aff, ds_aff;
    Eigen::VectorXd dy_aff;
    newton(-x * s, dx_aff, dy_aff, ds_aff);
    double ap_aff = std::min(1.0, kStepFraction * max_step(llt_x, dx_aff));
    double ad_aff = std::min(1.0, kStepFraction * max_step(llt_s, ds_aff));
    const double mu_aff =
        frob_inner(x + ap_aff * dx_aff, s + ad_aff * ds_aff) / n;
    double sigma = std::pow(mu_aff / mu, 3);
    sigma = std::min(1.0, std::max(0.0, sigma));

    // Corrector with second-order term.
    Eigen::MatrixXd e = sigma * mu * identity - x * s - dx_aff * ds_aff;
    Eigen::MatrixXd dx, ds;
    Eigen::VectorXd dy;
    newton(e, dx, dy, ds);
    const double ap = std::min(1.0, kStepFraction * max_step(llt_x, dx));
    const double ad = std::min(1.0, kStepFraction * max_step(llt_s, ds));

    x += ap * dx;
    y += ad * dy;
    s += ad * ds;
    x = 0.5 * (x + x.transpose()).eval();
    s = 0.5 * (s + s.transpose()).eval();
  }

  sol.iterations = iter;
  sol.x_matrix = complexify(x);
  sol.primal_value = frob_inner(rp.c, x);
  sol.dual_value = rp.b.dot(y);
  sol.dual_y = y;
  return sol;
}

}  // namespace vbaisac
