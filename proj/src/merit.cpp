#include "ssqp/merit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ssqp/error.hpp"

namespace ssqp {

double ExtendedReal::value() const {
  if (infinite_) throw Error(ErrorCode::kInvalidArgument, "value() of an infinite ExtendedReal");
  return value_;
}

double ExtendedReal::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string to_string(const ExtendedReal& v) {
  if (v.is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v.value());
  return buf;
}

ExtendedReal parse_extended(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "Infinity") return ExtendedReal::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidArgument, "not a number: '" + text + "'");
  }
  return ExtendedReal::finite(v);
}

void MeritParams::validate() const {
  auto open_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!open_unit(sigma)) throw Error(ErrorCode::kInvalidArgument, "sigma must lie in (0,1)");
  if (!open_unit(eps_tau)) throw Error(ErrorCode::kInvalidArgument, "eps_tau must lie in (0,1)");
  if (!open_unit(eps_xi)) throw Error(ErrorCode::kInvalidArgument, "eps_xi must lie in (0,1)");
  if (!(tau_init > 0.0) || !std::isfinite(tau_init)) {
    throw Error(ErrorCode::kInvalidArgument, "tau_init must be positive");
  }
  if (!(xi_init > 0.0) || !std::isfinite(xi_init)) {
    throw Error(ErrorCode::kInvalidArgument, "xi_init must be positive");
  }
}

double phi(double f, double c_norm1, double tau) { return tau * f + c_norm1; }

double phi(const Problem& problem, const Vec& x, double tau) {
  return phi(problem.f(x), problem.c(x).lpNorm<1>(), tau);
}

double delta_q(double tau, const Vec& g, const Mat& H, const Vec& d, double c_norm1) {
  const double curvature = std::max(d.dot(H * d), 0.0);
  return -tau * (g.dot(d) + 0.5 * curvature) + c_norm1;
}

ExtendedReal tau_trial(const Vec& g, const Vec& d, const Mat& H, double c_norm1, double sigma) {
  // With c = 0 the KKT equations give gᵀd + dᵀHd = yᵀc = 0; a positive value
  // there is rounding and would drive τ to zero.
  if (c_norm1 == 0.0) return ExtendedReal::infinity();
  const double denom = g.dot(d) + std::max(d.dot(H * d), 0.0);
  if (denom <= 0.0) return ExtendedReal::infinity();
  return ExtendedReal::finite((1.0 - sigma) * c_norm1 / denom);
}

ParamUpdate update_tau(double tau_prev, const ExtendedReal& trial, double eps_tau) {
  if (tau_prev <= trial) return {tau_prev, false};
  const double next = (1.0 - eps_tau) * trial.value();
  if (!(next > 0.0)) {
    throw Error(ErrorCode::kNonPositiveTau,
                "merit parameter update produced tau=" + std::to_string(next));
  }
  return {next, true};
}

ParamUpdate update_tau(const MeritState& state, const ExtendedReal& trial, double eps_tau) {
  return update_tau(state.tau, trial, eps_tau);
}

double xi_trial(double delta_q_value, double tau, double d_norm_sq) {
  if (d_norm_sq == 0.0) throw Error(ErrorCode::kDivisionByZero, "xi_trial with a zero step");
  return delta_q_value / (tau * d_norm_sq);
}

ParamUpdate update_xi(double xi_prev, double trial, double eps_xi) {
  if (xi_prev <= trial) return {xi_prev, false};
  return {(1.0 - eps_xi) * trial, true};
}

ParamUpdate update_xi(const MeritState& state, double trial, double eps_xi) {
  return update_xi(state.xi, trial, eps_xi);
}

void commit(MeritState& state, const ParamUpdate& tau, const ParamUpdate& xi) {
  state.tau = tau.value;
  state.xi = xi.value;
  if (tau.decreased) ++state.s_count;
  if (xi.decreased) ++state.r_count;
}

}  // namespace ssqp
