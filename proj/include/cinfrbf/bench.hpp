#pragma once

#include <cinfrbf/cholesky.hpp>
#include <cinfrbf/interpolate.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cinfrbf {

struct bench_config {
  int dim = 2;
  double alpha = 2.0;
  double delta = 0.4;
  int levels = 4;
  std::string target = "sincos";
  std::uint64_t seed = 1;
  std::size_t eval_points = 2048;
};

struct bench_row {
  int level = 0;
  std::size_t n = 0;
  double fill = 0.0;
  double max_err = 0.0;
  double rms_err = 0.0;
  double cond_est = 0.0;
  double nnz_frac = 0.0;
  bool factor_ok = false;
  std::size_t pivot = 0;  // failing pivot when !factor_ok
};

struct bench_result {
  kernel_kind kind = kernel_kind::cinf;
  std::vector<bench_row> rows;
};

using target_fn = std::function<double(std::span<const double>)>;

/// Named smooth test targets, defined for any dimension.
inline target_fn make_target(const std::string& name) {
  if (name == "sincos") {
    return [](std::span<const double> x) {
      double v = 1.0;
      for (std::size_t k = 0; k < x.size(); ++k)
        v *= (k % 2 == 0) ? std::sin(std::numbers::pi * x[k]) : std::cos(std::numbers::pi * x[k]);
      return v;
    };
  }
  if (name == "gauss") {
    return [](std::span<const double> x) {
      double sq = 0.0;
      for (double c : x) sq += (c - 0.5) * (c - 0.5);
      return std::exp(-4.0 * sq);
    };
  }
  throw std::invalid_argument("unknown target '" + name + "' (known: sincos, gauss)");
}

namespace detail {

/// Nested uniform grids over [0,1]^d: level k has base*2^k + 1 points per
/// axis, so every level contains all previous ones.
inline point_set refinement_grid(int dim, int level, int base_cells) {
  const int m = base_cells * (1 << level);  // cells per axis
  std::vector<double> coords;
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  while (true) {
    for (int k = 0; k < dim; ++k)
      coords.push_back(static_cast<double>(idx[static_cast<std::size_t>(k)]) / m);
    int k = 0;
    while (k < dim && ++idx[static_cast<std::size_t>(k)] > m) {
      idx[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == dim) break;
  }
  return point_set(dim, std::move(coords));
}

}  // namespace detail

/// Runs the nested-refinement convergence study for one kernel. Levels that
/// fail to factorize are recorded (factor_ok=false) and later levels are
/// still attempted.
inline bench_result run_bench_kernel(const bench_config& cfg, kernel_kind kind) {
  if (cfg.levels < 2) throw std::domain_error("bench: need at least 2 levels");
  if (cfg.dim < 1) throw std::domain_error("bench: dimension must be >= 1");
  const target_fn g = make_target(cfg.target);
  const kernel_params params(cfg.alpha, cfg.delta);
  const int base_cells = cfg.dim <= 2 ? 4 : 2;

  // Seeded evaluation cloud, shared across levels and kernels.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> qcoords(cfg.eval_points * static_cast<std::size_t>(cfg.dim));
  for (double& c : qcoords) c = unif(rng);
  const point_set queries(cfg.dim, std::move(qcoords));
  std::vector<double> truth(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) truth[i] = g(queries.point(i));

  bench_result result;
  result.kind = kind;
  for (int level = 0; level < cfg.levels; ++level) {
    point_set grid = detail::refinement_grid(cfg.dim, level, base_cells);
    bench_row row;
    row.level = level;
    row.n = grid.size();
    row.fill = fill_distance(grid, axis_box::unit(cfg.dim));

    const sparse_sym_matrix A = assemble(grid, params, kind);
    row.nnz_frac = A.nnz_fraction();
    auto outcome = cholesky_factor::factorize(A);
    if (auto* npd = std::get_if<not_positive_definite>(&outcome)) {
      row.factor_ok = false;
      row.pivot = npd->pivot;
      result.rows.push_back(row);
      continue;
    }
    const auto& factor = std::get<cholesky_factor>(outcome);
    row.factor_ok = true;

    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = g(grid.point(i));
    solve_stats stats = solve_interpolation_system(A, factor, values);
    interpolant model{std::move(grid), std::move(stats.coefficients), params, kind};
    const std::vector<double> pred = evaluate(model, queries);
    double max_err = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      const double err = std::abs(pred[i] - truth[i]);
      max_err = std::max(max_err, err);
      sq += err * err;
    }
    row.max_err = max_err;
    row.rms_err = std::sqrt(sq / static_cast<double>(pred.size()));
    row.cond_est = max_eig_estimate(A) / min_eig_estimate(A, factor);
    result.rows.push_back(row);
  }
  return result;
}

/// Convergence study for the main kernel plus the wendland_c2 baseline.
inline std::vector<bench_result> run_bench(const bench_config& cfg) {
  return {run_bench_kernel(cfg, kernel_kind::cinf), run_bench_kernel(cfg, kernel_kind::wendland)};
}

}  // namespace cinfrbf
