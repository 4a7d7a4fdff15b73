#include "vbaisac/manifold.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vbaisac {

CirclePoint CirclePoint::checked(Eigen::VectorXcd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(std::abs(v(i)) - 1.0) > 1e-9)
      throw std::invalid_argument("circle point entries must be unit modulus");
  return CirclePoint{std::move(v)};
}

QuadraticObjective::QuadraticObjective(Eigen::MatrixXcd q, Eigen::VectorXcd target,
                                       double constant)
    : q_(std::move(q)), target_(std::move(target)), constant_(constant) {
  if (q_.rows() != target_.size())
    throw std::invalid_argument("objective target length must match Q rows");
  gram_.noalias() = q_.adjoint() * q_;
  q_target_.noalias() = q_.adjoint() * target_;
}

QuadraticObjective QuadraticObjective::two_target(Eigen::MatrixXcd q,
                                                  const Eigen::VectorXcd& b_opt,
                                                  const Eigen::VectorXcd& b_rad,
                                                  double rho) {
  if (b_opt.size() != b_rad.size())
    throw std::invalid_argument("target vectors must have equal length");
  Eigen::VectorXcd target = rho * b_opt + (1.0 - rho) * b_rad;
  const double constant = rho * b_opt.squaredNorm() + (1.0 - rho) * b_rad.squaredNorm();
  return QuadraticObjective(std::move(q), std::move(target), constant);
}

QuadraticObjective QuadraticObjective::two_target_kron(Eigen::MatrixXcd left,
                                                       Eigen::Index block_rows,
                                                       const Eigen::VectorXcd& b_opt,
                                                       const Eigen::VectorXcd& b_rad,
                                                       double rho) {
  if (b_opt.size() != b_rad.size())
    throw std::invalid_argument("target vectors must have equal length");
  if (left.rows() * block_rows != b_opt.size())
    throw std::invalid_argument("Kronecker factor dimensions do not match the targets");
  QuadraticObjective obj;
  obj.kron_form_ = true;
  obj.kron_left_ = std::move(left);
  obj.block_rows_ = block_rows;
  obj.target_ = rho * b_opt + (1.0 - rho) * b_rad;
  obj.constant_ = rho * b_opt.squaredNorm() + (1.0 - rho) * b_rad.squaredNorm();
  // Q^H t = vec(T L^*) for Q = kron(L, I), t = vec(T).
  Eigen::Map<const Eigen::MatrixXcd> t(obj.target_.data(), block_rows, obj.kron_left_.rows());
  Eigen::MatrixXcd qt = t * obj.kron_left_.conjugate();
  obj.q_target_ = Eigen::Map<const Eigen::VectorXcd>(qt.data(), qt.size());
  return obj;
}

Eigen::MatrixXcd QuadraticObjective::q_matrix() const {
  if (!kron_form_) return q_;
  const Eigen::Index n = block_rows_;
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Zero(kron_left_.rows() * n, kron_left_.cols() * n);
  for (Eigen::Index r = 0; r < kron_left_.rows(); ++r)
    for (Eigen::Index c = 0; c < kron_left_.cols(); ++c)
      out.block(r * n, c * n, n, n) =
          kron_left_(r, c) * Eigen::MatrixXcd::Identity(n, n);
  return out;
}

double QuadraticObjective::value(const Eigen::VectorXcd& p) const {
  if (kron_form_) {
    Eigen::Map<const Eigen::MatrixXcd> pm(p.data(), block_rows_, kron_left_.cols());
    Eigen::MatrixXcd qp = pm * kron_left_.transpose();
    Eigen::Map<const Eigen::VectorXcd> qpv(qp.data(), qp.size());
    return qp.squaredNorm() - 2.0 * std::real(target_.dot(qpv)) + constant_;
  }
  const std::complex<double> quad = p.dot(gram_ * p);
  const std::complex<double> lin = q_target_.dot(p);
  return std::real(quad) - 2.0 * std::real(lin) + constant_;
}

Eigen::VectorXcd QuadraticObjective::euclidean_gradient(const Eigen::VectorXcd& p) const {
  if (kron_form_) {
    Eigen::Map<const Eigen::MatrixXcd> pm(p.data(), block_rows_, kron_left_.cols());
    // 2 Q^H (Q p) - 2 Q^H t = 2 vec((P L^T) L^*) - 2 q_target.
    Eigen::MatrixXcd qp = pm * kron_left_.transpose();
    Eigen::MatrixXcd g = qp * kron_left_.conjugate();
    Eigen::Map<const Eigen::VectorXcd> gv(g.data(), g.size());
    return 2.0 * (gv - q_target_);
  }
  return 2.0 * (gram_ * p - q_target_);
}

Eigen::VectorXcd project_tangent(const CirclePoint& base, const Eigen::VectorXcd& ambient) {
  if (base.entries.size() != ambient.size())
    throw std::invalid_argument("tangent projection dimension mismatch");
  Eigen::VectorXcd out(ambient.size());
  for (Eigen::Index i = 0; i < ambient.size(); ++i) {
    const double radial = std::real(ambient(i) * std::conj(base.entries(i)));
    out(i) = ambient(i) - radial * base.entries(i);
  }
  return out;
}

CirclePoint retract(const CirclePoint& base, const Eigen::VectorXcd& step) {
  if (base.entries.size() != step.size())
    throw std::invalid_argument("retraction dimension mismatch");
  Eigen::VectorXcd out(step.size());
  for (Eigen::Index i = 0; i < step.size(); ++i) {
    const std::complex<double> z = base.entries(i) + step(i);
    const double mag = std::abs(z);
    if (mag < 1e-14)
      throw std::invalid_argument("degenerate retraction: step cancels a base entry");
    out(i) = z / mag;
  }
  return CirclePoint{std::move(out)};
}

Eigen::VectorXcd euclidean_gradient(const QuadraticObjective& obj, const CirclePoint& p) {
  return obj.euclidean_gradient(p.entries);
}

void CgTrace::attach(CgOptions& options) {
  options.callback = [this](int iter, const CirclePoint&, double f, double g, double a) {
    rows.push_back({iter, f, g, a});
  };
}

std::string CgTrace::csv() const {
  std::string out = "iter,objective,gradnorm,step\n";
  char buf[120];
  for (const Row& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g\n", r.iter, r.objective,
                  r.gradnorm, r.step);
    out += buf;
  }
  return out;
}

namespace {

double inner(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return std::real(a.dot(b));
}

}  // namespace

CgResult riemannian_cg(const QuadraticObjective& obj, const CirclePoint& start,
                       const CgOptions& options) {
  constexpr double kArmijoC = 1e-4;
  constexpr double kShrink = 0.5;
  constexpr int kMaxBacktracks = 60;

  const Eigen::Index n = start.entries.size();
  CirclePoint p = start;
  double f = obj.value(p.entries);
  Eigen::VectorXcd grad = project_tangent(p, obj.euclidean_gradient(p.entries));
  Eigen::VectorXcd dir = -grad;
  double warm_alpha = 0.0;  // Barzilai-Borwein estimate, capped at 1
  double prev_alpha = 1.0;
  double last_alpha = 0.0;

  CgResult result;
  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    const double gnorm = grad.norm();
    if (options.callback) options.callback(iter, p, f, gnorm, last_alpha);
    if (gnorm < options.tol) {
      result.converged = true;
      break;
    }

    double slope = inner(grad, dir);
    if (slope >= 0.0) {  // not a descent direction; restart
      dir = -grad;
      slope = -gnorm * gnorm;
    }

    double alpha = warm_alpha > 0.0 ? std::min(1.0, warm_alpha)
                                    : std::min(1.0, (iter == 0) ? 1.0 / std::max(1.0, gnorm)
                                                                : 2.0 * prev_alpha);
    CirclePoint cand = p;
    double f_cand = f;
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      cand = retract(p, alpha * dir);
      f_cand = obj.value(cand.entries);
      if (f_cand <= f + kArmijoC * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= kShrink;
    }
    if (!accepted) break;  // flat to machine precision

    Eigen::VectorXcd grad_new = project_tangent(cand, obj.euclidean_gradient(cand.entries));
    const Eigen::VectorXcd grad_old_t = project_tangent(cand, grad);

    // Barzilai-Borwein warm start for the next search from the transported
    // displacement and gradient change.
    const Eigen::VectorXcd s = alpha * project_tangent(cand, dir);
    const double sy = inner(s, grad_new - grad_old_t);
    warm_alpha = sy > 0.0 ? inner(s, s) / sy : 0.0;

    // PR+ with projection transport; periodic restart keeps the direction fresh.
    double beta = 0.0;
    if ((iter + 1) % static_cast<int>(n) != 0)
      beta = std::max(0.0, inner(grad_new, grad_new - grad_old_t) / (gnorm * gnorm));
    dir = -grad_new + beta * project_tangent(cand, dir);
    p = std::move(cand);
    f = f_cand;
    grad = std::move(grad_new);
    prev_alpha = alpha;
    last_alpha = alpha;
  }

  result.point = std::move(p);
  result.objective = f;
  result.iterations = iter;
  return result;
}

}  // namespace vbaisac
