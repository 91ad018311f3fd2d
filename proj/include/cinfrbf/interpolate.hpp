#pragma once

#include <cinfrbf/cholesky.hpp>
#include <cinfrbf/gram.hpp>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cinfrbf {

/// Fitted radial interpolant s(x) = sum_j c_j profile(||x - x_j|| / delta).
struct interpolant {
  point_set centers;
  std::vector<double> coefficients;
  kernel_params params;
  kernel_kind kind = kernel_kind::cinf;
  double residual_inf = 0.0;    // achieved ||A c - f||_inf
  bool refined = false;         // one refinement step was applied
  bool uncertified = false;     // fitted without a positive-definiteness certificate
};

namespace detail {

inline constexpr double solve_rel_tolerance = 1e-8;

inline double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace detail

struct solve_stats {
  std::vector<double> coefficients;
  double residual_inf = 0.0;
  bool refined = false;
};

/// A c = f through the factor, with one iterative refinement pass when the
/// direct solve misses the relative residual target.
inline solve_stats solve_interpolation_system(const sparse_sym_matrix& A,
                                              const cholesky_factor& factor,
                                              const std::vector<double>& values) {
  solve_stats out;
  out.coefficients = factor.solve(values);
  auto residual = [&] {
    std::vector<double> r = A.matvec(out.coefficients);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = values[i] - r[i];
    return r;
  };
  std::vector<double> r = residual();
  const double target = detail::solve_rel_tolerance * detail::inf_norm(values);
  if (detail::inf_norm(r) > target) {
    const std::vector<double> e = factor.solve(r);
    for (std::size_t i = 0; i < out.coefficients.size(); ++i) out.coefficients[i] += e[i];
    r = residual();
    out.refined = true;
  }
  out.residual_inf = detail::inf_norm(r);
  return out;
}

/// Fits the interpolant. Throws not_positive_definite_error when
/// factorization fails.
inline interpolant fit(point_set pts, const std::vector<double>& values,
                       const kernel_params& params, kernel_kind kind = kernel_kind::cinf,
                       bool certified = false) {
  if (pts.size() != values.size())
    throw std::invalid_argument("fit: point/value count mismatch");
  const sparse_sym_matrix A = assemble(pts, params, kind);
  auto outcome = cholesky_factor::factorize(A);
  if (auto* npd = std::get_if<not_positive_definite>(&outcome))
    throw not_positive_definite_error(npd->pivot);
  solve_stats stats = solve_interpolation_system(A, std::get<cholesky_factor>(outcome), values);

  interpolant model{std::move(pts), std::move(stats.coefficients), params, kind};
  model.residual_inf = stats.residual_inf;
  model.refined = stats.refined;
  model.uncertified = !certified;
  return model;
}

/// Evaluates the interpolant at each query, skipping centers outside the
/// support ball via the spatial index.
inline std::vector<double> evaluate(const interpolant& model, const point_set& queries) {
  if (queries.empty()) return {};
  if (queries.dim() != model.centers.dim())
    throw std::invalid_argument("evaluate: query dimension mismatch");
  const spatial_grid grid(model.centers, model.params.delta);
  std::vector<double> out(queries.size(), 0.0);
  parallel_for(queries.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t q = b; q < e; ++q) {
      const auto query = queries.point(q);
      double acc = 0.0;
      grid.for_candidates(query, [&](int j) {
        const double r =
            std::sqrt(point_set::squared_distance(query, model.centers.point(static_cast<std::size_t>(j))));
        if (r < model.params.delta)
          acc += model.coefficients[static_cast<std::size_t>(j)] *
                 profile_of(model.kind, r / model.params.delta, model.params.alpha);
      });
      out[q] = acc;
    }
  });
  return out;
}

}  // namespace cinfrbf
