#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace vbaisac {

/// A point on the product of unit circles: every entry has unit modulus
/// (checked to 1e-9 on construction).
struct CirclePoint {
  Eigen::VectorXcd entries;

  static CirclePoint checked(Eigen::VectorXcd v);
};

/// f(p) = rho * |Q p - b_opt|^2 + (1 - rho) * |Q p - b_rad|^2, stored in the
/// expanded form |Q p|^2 - 2 Re<Q p, target> + constant with
/// target = rho * b_opt + (1 - rho) * b_rad.
///
/// Q may be held densely or as kron(L, I_n); the Kronecker form evaluates
/// through the small factor (Q p = vec(P L^T) for p = vec(P)) and is what the
/// analog beamforming step uses.
class QuadraticObjective {
 public:
  QuadraticObjective(Eigen::MatrixXcd q, Eigen::VectorXcd target, double constant);

  static QuadraticObjective two_target(Eigen::MatrixXcd q,
                                       const Eigen::VectorXcd& b_opt,
                                       const Eigen::VectorXcd& b_rad, double rho);

  /// Q = kron(left, I_block): p of length block_rows * left.cols().
  static QuadraticObjective two_target_kron(Eigen::MatrixXcd left,
                                            Eigen::Index block_rows,
                                            const Eigen::VectorXcd& b_opt,
                                            const Eigen::VectorXcd& b_rad, double rho);

  double value(const Eigen::VectorXcd& p) const;

  /// 2 Q^H Q p - 2 Q^H target (Euclidean; the descent direction is its negative).
  Eigen::VectorXcd euclidean_gradient(const Eigen::VectorXcd& p) const;

  /// Materializes Q when held in Kronecker form.
  Eigen::MatrixXcd q_matrix() const;
  const Eigen::VectorXcd& target() const { return target_; }
  double constant() const { return constant_; }

 private:
  QuadraticObjective() = default;

  bool kron_form_ = false;
  Eigen::MatrixXcd q_;           // dense form
  Eigen::MatrixXcd gram_;        // Q^H Q (dense form only)
  Eigen::MatrixXcd kron_left_;   // L with Q = kron(L, I)
  Eigen::Index block_rows_ = 0;
  Eigen::VectorXcd target_;
  Eigen::VectorXcd q_target_;    // Q^H target
  double constant_ = 0.0;
};

/// Removes the radial component per entry:
/// out_i = ambient_i - Re(ambient_i * conj(base_i)) * base_i.
Eigen::VectorXcd project_tangent(const CirclePoint& base, const Eigen::VectorXcd& ambient);

/// Element-wise normalization retraction. Throws when an entry of
/// base + step has magnitude below 1e-14.
CirclePoint retract(const CirclePoint& base, const Eigen::VectorXcd& step);

Eigen::VectorXcd euclidean_gradient(const QuadraticObjective& obj, const CirclePoint& p);

struct CgOptions {
  double tol = 1e-6;    // on the Riemannian gradient norm
  int max_iter = 500;
  // Invoked once per iterate with (iter, point, objective, gradnorm, last_step).
  std::function<void(int, const CirclePoint&, double, double, double)> callback;
};

struct CgResult {
  CirclePoint point;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Per-iteration trace collector; install with attach() and render with csv().
struct CgTrace {
  struct Row {
    int iter;
    double objective;
    double gradnorm;
    double step;
  };
  std::vector<Row> rows;

  void attach(CgOptions& options);
  std::string csv() const;
};

/// Polak-Ribiere+ conjugate gradient with projection-based vector transport
/// and Armijo backtracking. The objective is non-increasing across iterates.
CgResult riemannian_cg(const QuadraticObjective& obj, const CirclePoint& start,
                       const CgOptions& options = {});

}  // namespace vbaisac
