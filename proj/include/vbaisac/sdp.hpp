#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace vbaisac {

struct SdpConstraint {
  Eigen::MatrixXcd matrix;  // Hermitian A_i
  double rhs;               // b_i
};

/// min Tr(C X)  s.t.  Tr(A_i X) = b_i,  X >= 0, with C and all A_i Hermitian.
struct SdpProblem {
  Eigen::MatrixXcd objective;  // Hermitian C
  std::vector<SdpConstraint> constraints;
};

enum class SdpStatus { optimal, max_iter, infeasible };

struct SdpIterate {
  int iter;
  double primal;           // Tr(C X)
  double dual;             // b^T y
  double complementarity;  // <X, S>
  double primal_residual;  // ||b - A(X)|| / (1 + ||b||)
  double dual_residual;    // ||C - S - A^T(y)||_F / (1 + ||C||_F)
};

struct SdpSolution {
  Eigen::MatrixXcd x_matrix;  // Hermitian PSD
  double primal_value = 0.0;
  double dual_value = 0.0;
  Eigen::VectorXd dual_y;
  int iterations = 0;
  SdpStatus status = SdpStatus::max_iter;
  std::vector<SdpIterate> trace;
};

/// Primal-dual path-following interior-point solve with Mehrotra
/// predictor-corrector steps. The complex Hermitian problem is embedded as a
/// real symmetric one of twice the dimension ([Re, -Im; Im, Re] map, objective
/// halved, constraint right-hand sides doubled) and the structured solution is
/// mapped back. Converges when the duality gap over (1 + |primal|) and both
/// residuals drop below tol.
SdpSolution solve(const SdpProblem& problem, double tol = 1e-7, int max_iter = 100);

/// Per-iteration convergence trace as CSV text (debug aid for solve plots).
std::string trace_csv(const SdpSolution& solution);

/// [Re M, -Im M; Im M, Re M] for Hermitian M (exposed for tests).
Eigen::MatrixXd realify(const Eigen::MatrixXcd& m);

/// Inverse of realify on a structured real symmetric matrix; off-structure
/// parts are averaged away.
Eigen::MatrixXcd complexify(const Eigen::MatrixXd& m);

}  // namespace vbaisac
