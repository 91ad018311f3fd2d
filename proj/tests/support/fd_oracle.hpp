#pragma once

// Finite-difference derivative oracle for t -> exp(-alpha (1 + tan(pi/2 t))^2)
// on (0, 1). Deliberately self-contained: the profile is evaluated here in
// long double, independent of the library's kernel path, so oracle and
// implementation cannot share a bug.

#include <cmath>
#include <numbers>
#include <vector>

namespace fd_oracle {

inline long double profile_sqrt_arg(long double t, long double alpha) {
  const long double u = std::tan(std::numbers::pi_v<long double> / 2.0L * t);
  const long double s = 1.0L + u;
  return std::exp(-alpha * s * s);
}

namespace detail {

inline std::vector<long double> central_coefficients(int order) {
  // alternating binomials: f^(j)(x) ~ h^-j sum_k (-1)^(j-k) C(j,k) f(x+(k-j/2)h)
  std::vector<long double> c(static_cast<std::size_t>(order) + 1);
  long double binom = 1.0L;
  for (int k = 0; k <= order; ++k) {
    c[static_cast<std::size_t>(k)] = ((order - k) % 2 == 0 ? binom : -binom);
    binom = binom * (order - k) / (k + 1);
  }
  return c;
}

}  // namespace detail

/// Richardson tableau over a shrinking central stencil, returning the entry
/// with the smallest internal error estimate (Ridders' scheme). The initial
/// step adapts to the local logarithmic derivative of the profile, which
/// grows like alpha (1+u)(1+u^2) towards the support boundary.
inline double derivative(double t, double alpha, int order) {
  const long double pi = std::numbers::pi_v<long double>;
  const long double u = std::tan(pi / 2.0L * static_cast<long double>(t));
  long double scale = alpha * pi * (1.0L + u) * (1.0L + u * u);
  if (scale < 4.0L) scale = 4.0L;
  long double h = 0.5L / scale;
  const long double margin = static_cast<long double>(order) / 2.0L + 1.0L;
  if (h > (1.0L - t) / margin * 0.9L) h = (1.0L - t) / margin * 0.9L;
  if (h > t / margin * 0.9L) h = t / margin * 0.9L;

  const std::vector<long double> coeffs = detail::central_coefficients(order);
  auto stencil = [&](long double step) {
    long double sum = 0.0L;
    for (int k = 0; k <= order; ++k)
      sum += coeffs[static_cast<std::size_t>(k)] *
             profile_sqrt_arg(t + (k - order / 2.0L) * step, alpha);
    long double hj = 1.0L;
    for (int j = 0; j < order; ++j) hj *= step;
    return sum / hj;
  };

  constexpr long double shrink = 1.4L;
  constexpr int levels = 12;
  std::vector<std::vector<long double>> tableau;
  tableau.push_back({stencil(h)});
  long double best = tableau[0][0];
  long double best_err = 1e300L;
  for (int m = 1; m < levels; ++m) {
    h /= shrink;
    std::vector<long double> row{stencil(h)};
    long double fac = shrink * shrink;
    for (int i = 1; i <= m; ++i) {
      row.push_back((fac * row[static_cast<std::size_t>(i - 1)] -
                     tableau[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(i - 1)]) /
                    (fac - 1.0L));
      fac *= shrink * shrink;
      const long double err =
          std::max(std::fabs(row[static_cast<std::size_t>(i)] - row[static_cast<std::size_t>(i - 1)]),
                   std::fabs(row[static_cast<std::size_t>(i)] -
                             tableau[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(i - 1)]));
      if (err < best_err) {
        best_err = err;
        best = row[static_cast<std::size_t>(i)];
      }
    }
    if (m > 4 && std::fabs(row.back() - tableau.back().back()) > 4.0L * best_err) break;
    tableau.push_back(std::move(row));
  }
  return static_cast<double>(best);
}

}  // namespace fd_oracle
