#pragma once

#include <string>

#include "ssqp/kkt.hpp"
#include "ssqp/problems.hpp"

namespace ssqp {

/// A real number or +∞. Comparisons against the infinite value are exact and
/// never go through a floating-point sentinel.
class ExtendedReal {
 public:
  static ExtendedReal infinity() { return ExtendedReal(true, 0.0); }
  static ExtendedReal finite(double v) { return ExtendedReal(false, v); }

  bool is_infinite() const { return infinite_; }
  /// Throws Error(kInvalidArgument) when infinite.
  double value() const;
  /// The finite value, or +inf as a double for reporting.
  double to_double() const;

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  /// a ≤ b for a finite real a.
  friend bool operator<=(double a, const ExtendedReal& b) { return b.infinite_ || a <= b.value_; }
  friend bool operator<(double a, const ExtendedReal& b) { return b.infinite_ || a < b.value_; }

 private:
  ExtendedReal(bool infinite, double value) : infinite_(infinite), value_(value) {}
  bool infinite_;
  double value_;
};

std::string to_string(const ExtendedReal& v);
/// Parses a decimal number or "inf".
ExtendedReal parse_extended(const std::string& text);

/// Parameters of the τ and ξ updates.
struct MeritParams {
  double sigma = 0.5;
  double eps_tau = 1e-2;
  double eps_xi = 1e-2;
  double tau_init = 1.0;
  double xi_init = 1.0;

  /// Throws Error(kInvalidArgument) naming the offending field.
  void validate() const;
};

struct MeritState {
  double tau = 1.0;
  double xi = 1.0;
  int s_count = 0;  // τ decreases so far
  int r_count = 0;  // ξ decreases so far

  static MeritState initial(const MeritParams& p) { return {p.tau_init, p.xi_init, 0, 0}; }
};

/// Result of one parameter update.
struct ParamUpdate {
  double value;
  bool decreased;
};

/// φ(x, τ) = τ f(x) + ‖c(x)‖₁.
double phi(const Problem& problem, const Vec& x, double tau);
double phi(double f, double c_norm1, double tau);

/// Δq = −τ(gᵀd + ½max{dᵀHd, 0}) + ‖c‖₁.
double delta_q(double tau, const Vec& g, const Mat& H, const Vec& d, double c_norm1);

/// ∞ when c = 0 or gᵀd + max{dᵀHd, 0} ≤ 0, else (1−σ)‖c‖₁ / (gᵀd + max{dᵀHd, 0}).
ExtendedReal tau_trial(const Vec& g, const Vec& d, const Mat& H, double c_norm1, double sigma);

ParamUpdate update_tau(double tau_prev, const ExtendedReal& trial, double eps_tau);
ParamUpdate update_tau(const MeritState& state, const ExtendedReal& trial, double eps_tau);

/// Δq / (τ‖d‖²); throws kDivisionByZero for a zero step.
double xi_trial(double delta_q_value, double tau, double d_norm_sq);

ParamUpdate update_xi(double xi_prev, double trial, double eps_xi);
ParamUpdate update_xi(const MeritState& state, double trial, double eps_xi);

/// Applies both updates and bumps the decrease counters.
void commit(MeritState& state, const ParamUpdate& tau, const ParamUpdate& xi);

}  // namespace ssqp
