#include "ssqp/kkt.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ssqp/error.hpp"

namespace ssqp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidDimension: return "InvalidDimension";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonPositiveTau: return "NonPositiveTau";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kInvalidInterval: return "InvalidInterval";
    case ErrorCode::kCurvatureViolation: return "CurvatureViolation";
    case ErrorCode::kEmptySchedule: return "EmptySchedule";
    case ErrorCode::kInvalidDelta: return "InvalidDelta";
    case ErrorCode::kInvalidRange: return "InvalidRange";
    case ErrorCode::kInvalidConstant: return "InvalidConstant";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

namespace {

void check_shapes(const Mat& H, const Mat& J) {
  const auto n = H.rows();
  if (H.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "H must be square");
  }
  if (J.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "J has " + std::to_string(J.cols()) + " columns, expected " +
                    std::to_string(n));
  }
  if (J.rows() > n) {
    throw Error(ErrorCode::kDimensionMismatch, "more constraints than variables");
  }
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if (n > 0 && (H - H.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw Error(ErrorCode::kInvalidArgument, "H is not symmetric");
  }
}

}  // namespace

void require_full_row_rank(const Mat& J) {
  if (J.rows() == 0) return;
  Eigen::JacobiSVD<Mat> svd(J);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smax > 0.0) || !(smin > kRankTol * smax) || s.size() < J.rows()) {
    throw Error(ErrorCode::kSingularSystem, "constraint Jacobian is rank deficient");
  }
}

KktFactorization::KktFactorization(const Mat& H, const Mat& J)
    : n_(static_cast<int>(H.rows())), m_(static_cast<int>(J.rows())) {
  check_shapes(H, J);
  require_full_row_rank(J);
  const int N = n_ + m_;
  K_ = Mat::Zero(N, N);
  K_.topLeftCorner(n_, n_) = H;
  K_.topRightCorner(n_, m_) = J.transpose();
  K_.bottomLeftCorner(m_, n_) = J;
  lu_.compute(K_);
  // Pivots below this threshold signal a curvature failure on Null(J).
  lu_.setThreshold(1e-13);
  if (!lu_.isInvertible()) {
    throw Error(ErrorCode::kSingularSystem, "KKT matrix is singular");
  }
}

KktSolution KktFactorization::solve(const Vec& g, const Vec& c, double tol) const {
  if (g.size() != n_ || c.size() != m_) {
    throw Error(ErrorCode::kDimensionMismatch, "gradient/constraint size mismatch");
  }
  Vec rhs(n_ + m_);
  rhs << -g, -c;
  Vec sol = lu_.solve(rhs);
  Vec r = K_ * sol - rhs;
  double residual = r.lpNorm<Eigen::Infinity>();
  const double scale = std::max({1.0, rhs.lpNorm<Eigen::Infinity>(),
                                 K_.cwiseAbs().maxCoeff() * sol.lpNorm<Eigen::Infinity>()});
  if (residual > tol * scale) {
    sol -= lu_.solve(r);
    r = K_ * sol - rhs;
    residual = r.lpNorm<Eigen::Infinity>();
  }
  if (!std::isfinite(residual) || residual > tol * scale) {
    throw Error(ErrorCode::kSingularSystem,
                "KKT residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return {sol.head(n_), sol.tail(m_), residual};
}

KktSolution solve_kkt(const KktSystem& sys, double tol) {
  if (sys.g.size() != sys.H.rows() || sys.c.size() != sys.J.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "gradient/constraint size mismatch");
  }
  return KktFactorization(sys.H, sys.J).solve(sys.g, sys.c, tol);
}

Mat null_space_basis(const Mat& J) {
  const auto m = J.rows();
  const auto n = J.cols();
  if (m == 0) return Mat::Identity(n, n);
  require_full_row_rank(J);
  Eigen::HouseholderQR<Mat> qr(J.transpose());
  Mat Q = qr.householderQ() * Mat::Identity(n, n);
  return Q.rightCols(n - m);
}

StepDecomposition decompose_step(const Vec& d, const Mat& J) {
  if (d.size() != J.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "step and Jacobian sizes differ");
  }
  const auto m = J.rows();
  const auto n = J.cols();
  if (m == 0) return {d, Vec::Zero(n)};
  require_full_row_rank(J);
  // Range(Jᵀ) is spanned by the leading m columns of Q in Jᵀ = QR.
  Eigen::HouseholderQR<Mat> qr(J.transpose());
  Mat range = qr.householderQ() * Mat::Identity(n, m);
  Vec v = range * (range.transpose() * d);
  return {d - v, v};
}

double min_reduced_eigenvalue(const Mat& H, const Mat& J) {
  check_shapes(H, J);
  if (J.rows() == H.rows()) return std::numeric_limits<double>::infinity();
  const Mat Z = null_space_basis(J);
  const Mat reduced = Z.transpose() * H * Z;
  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (reduced + reduced.transpose()),
                                         Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

bool check_reduced_curvature(const Mat& H, const Mat& J, double zeta) {
  return min_reduced_eigenvalue(H, J) >= zeta;
}

}  // namespace ssqp
