#pragma once

#include <Eigen/Dense>

namespace ssqp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Relative tolerance for full-row-rank checks on a constraint Jacobian.
inline constexpr double kRankTol = 1e-10;
/// Relative tolerance on the symmetry of H.
inline constexpr double kSymmetryTol = 1e-12;
/// Default acceptance tolerance on the KKT residual.
inline constexpr double kKktTol = 1e-10;

/// The Newton-KKT system [[H, Jᵀ], [J, 0]] (d; y) = -(g; c).
struct KktSystem {
  Mat H;  // n×n, symmetric
  Mat J;  // m×n, full row rank
  Vec g;  // n
  Vec c;  // m
};

struct KktSolution {
  Vec d;
  Vec y;
  double residual = 0.0;  // ∞-norm of the block residual
};

/// Orthogonal split d = u + v with u ∈ Null(J) and v ∈ Range(Jᵀ).
struct StepDecomposition {
  Vec u;
  Vec v;
};

/// Factorizes the block matrix once so that many right-hand sides sharing
/// (H, J) can be solved cheaply; Monte Carlo loops rely on this.
class KktFactorization {
 public:
  /// Validates dimensions, symmetry of H and the row rank of J, then factors
  /// with full pivoting. Throws Error(kSingularSystem) on rank-deficient J or a
  /// singular block matrix.
  KktFactorization(const Mat& H, const Mat& J);

  /// Solves for (d, y) given g and c. `tol` bounds the ∞-norm residual relative
  /// to max(1, |rhs|∞, |K|∞·|sol|∞); one step of iterative refinement is applied
  /// before giving up with kSingularSystem.
  KktSolution solve(const Vec& g, const Vec& c, double tol = kKktTol) const;

  int n() const { return n_; }
  int m() const { return m_; }

 private:
  int n_;
  int m_;
  Mat K_;
  Eigen::FullPivLU<Mat> lu_;
};

KktSolution solve_kkt(const KktSystem& sys, double tol = kKktTol);

StepDecomposition decompose_step(const Vec& d, const Mat& J);

/// True iff λ_min(ZᵀHZ) ≥ zeta for an orthonormal null-space basis Z of J.
/// Vacuously true when the null space is trivial.
bool check_reduced_curvature(const Mat& H, const Mat& J, double zeta);

/// Smallest eigenvalue of the reduced Hessian ZᵀHZ (+∞ if n == m).
double min_reduced_eigenvalue(const Mat& H, const Mat& J);

/// Orthonormal basis (n×(n-m)) of Null(J) from a Householder QR of Jᵀ.
Mat null_space_basis(const Mat& J);

/// Throws kSingularSystem unless σ_min(J) > kRankTol·σ_max(J).
void require_full_row_rank(const Mat& J);

}  // namespace ssqp
