#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "ssqp/kkt.hpp"

namespace ssqp {

/// Axis-aligned box on which a problem's Lipschitz metadata is valid.
struct Box {
  Vec lower;
  Vec upper;

  bool contains(const Vec& x) const {
    return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
  }
};

/// Known first-order point of a built-in instance.
struct KktPoint {
  Vec x;
  Vec y;
};

/// min f(x) s.t. c(x) = 0, described by its oracles plus the Lipschitz data the
/// stepsize rule needs.
///
/// The optional finite-sum fields describe f = (1/N) Σ f_i; they back the
/// mini-batch gradient estimator.
struct Problem {
  std::string name;
  int n = 0;
  int m = 0;

  std::function<double(const Vec&)> f;
  std::function<Vec(const Vec&)> grad_f;
  std::function<Vec(const Vec&)> c;
  std::function<Mat(const Vec&)> jac_c;
  std::function<Mat(const Vec&)> hess_f;  // may be empty

  double L = 0.0;      // Lipschitz constant of ∇f
  double Gamma = 0.0;  // ≥ Σ Lipschitz constants of ∇c_i
  std::optional<double> f_low;
  Vec x0;

  std::optional<Box> box;
  std::optional<KktPoint> solution;

  int num_components = 0;
  std::function<Vec(int, const Vec&)> component_grad;  // ∇f_i(x)
};

struct QuadraticOptions {
  /// Sets q = 0 and b = 0, which puts the solution at the origin.
  bool homogeneous = false;
  /// Number of finite-sum components backing mini-batch sampling.
  int components = 16;
  double eig_min = 1.0;
  double eig_max = 3.0;
};

/// f(x) = ½xᵀQx + qᵀx with Ax = b. L = ‖Q‖₂ exactly, Γ = 0, and the KKT point
/// is stored in `solution`.
Problem make_quadratic(int n, int m, std::uint64_t seed, const QuadraticOptions& options = {});

/// 2-D Rosenbrock on the unit circle. L and Γ hold on the box [-1.5, 1.5]².
Problem make_rosenbrock_sphere();

/// Smooth nonconvex instance: f(x) = ½xᵀQx + qᵀx + ρ Σ sin(x_j) and
/// c_i(x) = a_iᵀx + η sin(x_i) − b_i, with σ_min(A) > η so the Jacobian has
/// full row rank everywhere.
Problem make_random_licq(int n, int m, std::uint64_t seed);

/// Builds one of the instances above from a registry name
/// ("quadratic", "rosenbrock_sphere", "random_licq").
Problem make_problem(const std::string& name, int n, int m, std::uint64_t seed);

/// Largest componentwise error of central differences against the analytic
/// gradient and Jacobian at x.
struct DerivativeCheck {
  double grad_error = 0.0;
  double jac_error = 0.0;
};
DerivativeCheck finite_difference_check(const Problem& problem, const Vec& x, double h);

}  // namespace ssqp
