#pragma once

#include <cinfrbf/bivar_poly.hpp>

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace cinfrbf {

/// Shape parameter and support radius. The interpolation kernel is
/// x -> phi(||x|| / delta, alpha), so its support is the open ball of
/// radius delta.
struct kernel_params {
  double alpha;
  double delta;

  kernel_params(double alpha_, double delta_) : alpha(alpha_), delta(delta_) {
    if (!(std::isfinite(alpha) && alpha > 0.0))
      throw std::domain_error("kernel_params: alpha must be positive and finite");
    if (!(std::isfinite(delta) && delta > 0.0))
      throw std::domain_error("kernel_params: delta must be positive and finite");
  }
};

struct profile_value {
  double value = 0.0;
  bool underflowed = false;
};

namespace detail {
// exp(-x) underflows past the smallest subnormal below this magnitude.
inline constexpr double exp_underflow_threshold = 745.1332191019412;
}  // namespace detail

/// Radial profile phi(t) = exp(-alpha (1 + tan(pi/2 t^2))^2) for t < 1, 0 for
/// t >= 1. The exponent is computed in long double; once it exceeds the
/// representable range of exp the value is flushed to exact 0 and flagged.
inline profile_value phi(double t, double alpha) {
  if (!(std::isfinite(t) && t >= 0.0))
    throw std::domain_error("phi: t must be finite and nonnegative");
  if (!(std::isfinite(alpha) && alpha > 0.0))
    throw std::domain_error("phi: alpha must be positive and finite");
  if (t >= 1.0) return {0.0, false};

  const long double half_pi = std::numbers::pi_v<long double> / 2.0L;
  const long double one_minus_t2 = (1.0L - static_cast<long double>(t)) * (1.0L + t);
  long double u;
  if (one_minus_t2 < 1e-8L) {
    // tan(pi/2 t^2) = cot(pi/2 (1 - t^2)); the cot form avoids evaluating tan
    // next to its pole.
    u = 1.0L / std::tan(half_pi * one_minus_t2);
  } else {
    u = std::tan(half_pi * static_cast<long double>(t) * t);
  }
  const long double one_plus_u = 1.0L + u;
  const long double exponent = static_cast<long double>(alpha) * one_plus_u * one_plus_u;
  if (exponent > detail::exp_underflow_threshold) return {0.0, true};
  return {static_cast<double>(std::exp(-exponent)), false};
}

/// Multivariate kernel phi(||x|| / delta, alpha).
inline double phi_nd(std::span<const double> x, const kernel_params& params) {
  if (x.empty()) throw std::domain_error("phi_nd: empty point");
  double sq = 0.0;
  for (double c : x) {
    if (!std::isfinite(c)) throw std::domain_error("phi_nd: non-finite component");
    sq += c * c;
  }
  return phi(std::sqrt(sq) / params.delta, params.alpha).value;
}

/// j-th derivative of t -> phi(sqrt(t)): exp(-alpha(1+u)^2) (-1)^j alpha
/// (pi/2)^j (1+u^2) F_j(alpha, u) with u = tan(pi/2 t). The substitution here
/// is linear in t, unlike phi itself where tan acts on t^2.
inline double phi_sqrt_deriv(double t, double alpha, int j, const bivar_poly& fj) {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("phi_sqrt_deriv: t must lie in (0, 1)");
  if (!(std::isfinite(alpha) && alpha > 0.0))
    throw std::domain_error("phi_sqrt_deriv: alpha must be positive and finite");
  if (j < 1) throw std::domain_error("phi_sqrt_deriv: order must be >= 1");
  if (fj.degree_a() != j - 1 || fj.degree_u() != 3 * (j - 1) + 1)
    throw std::domain_error("phi_sqrt_deriv: polynomial does not match order " + std::to_string(j));

  const long double half_pi = std::numbers::pi_v<long double> / 2.0L;
  const long double u = std::tan(half_pi * static_cast<long double>(t));
  const long double one_plus_u = 1.0L + u;
  const long double exponent = static_cast<long double>(alpha) * one_plus_u * one_plus_u;

  // F_j evaluated in long double via power tables; coefficients are exact
  // integers well inside the mantissa for the orders used here.
  const int da = fj.degree_a();
  const int du = fj.degree_u();
  std::vector<long double> pa(static_cast<std::size_t>(da) + 1, 1.0L);
  std::vector<long double> pu(static_cast<std::size_t>(du) + 1, 1.0L);
  for (int i = 1; i <= da; ++i) pa[i] = pa[i - 1] * alpha;
  for (int k = 1; k <= du; ++k) pu[k] = pu[k - 1] * u;
  long double f = 0.0L;
  for (const auto& [e, c] : fj.terms())
    f += static_cast<long double>(to_double(c)) * pa[e.first] * pu[e.second];

  const long double sign = (j % 2 == 0) ? 1.0L : -1.0L;
  long double result = std::exp(-exponent) * sign * alpha * std::pow(half_pi, j) * (1.0L + u * u) * f;
  return static_cast<double>(result);
}

/// (1-t)^4 (4t+1) on [0,1), 0 beyond: the classical C^2 compactly supported
/// comparison kernel.
inline double wendland_c2(double t) {
  if (!(std::isfinite(t) && t >= 0.0)) throw std::domain_error("wendland_c2: t must be >= 0");
  if (t >= 1.0) return 0.0;
  const double s = 1.0 - t;
  const double s2 = s * s;
  return s2 * s2 * (4.0 * t + 1.0);
}

}  // namespace cinfrbf
