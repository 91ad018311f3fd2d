#pragma once

#include <cinfrbf/kernel.hpp>
#include <cinfrbf/parallel.hpp>
#include <cinfrbf/point_set.hpp>
#include <cinfrbf/spatial_grid.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cinfrbf {

enum class kernel_kind { cinf, wendland };

inline double profile_of(kernel_kind kind, double t, double alpha) {
  return kind == kernel_kind::cinf ? phi(t, alpha).value : wendland_c2(t);
}

/// Symmetric Gram matrix, lower triangle in compressed row storage. Every
/// row contains its diagonal entry; off-diagonal entries (i, j), j < i,
/// exist iff ||x_i - x_j|| < delta. Column indices ascend within a row.
struct sparse_sym_matrix {
  std::size_t n = 0;
  std::vector<std::size_t> row_ptr;  // n + 1
  std::vector<int> col_idx;
  std::vector<double> values;

  std::size_t stored_entries() const { return values.size(); }

  /// Entry count of the full symmetric matrix.
  std::size_t nnz_full() const { return 2 * values.size() - n; }

  double nnz_fraction() const {
    return n == 0 ? 0.0 : static_cast<double>(nnz_full()) / (static_cast<double>(n) * static_cast<double>(n));
  }

  double entry(std::size_t i, std::size_t j) const {
    if (j > i) std::swap(i, j);
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      if (static_cast<std::size_t>(col_idx[k]) == j) return values[k];
    return 0.0;
  }

  /// y = A x with A treated as symmetric.
  std::vector<double> matvec(const std::vector<double>& x) const {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
        const std::size_t j = static_cast<std::size_t>(col_idx[k]);
        y[i] += values[k] * x[j];
        if (j != i) y[j] += values[k] * x[i];
      }
    }
    return y;
  }
};

enum class assembly_path { auto_select, spatial_index, brute_force };

namespace detail {

/// Shared entry computation so the indexed and brute paths are bit-identical.
inline double gram_entry(const point_set& pts, std::size_t i, std::size_t j,
                         const kernel_params& params, kernel_kind kind) {
  if (coordinatewise_close(pts.point(i), pts.point(j)))
    throw duplicate_points_error(j, i);
  return profile_of(kind, pts.distance(i, j) / params.delta, params.alpha);
}

inline constexpr std::size_t brute_force_cutoff = 1000;

}  // namespace detail

/// Assembles the Gram matrix A[i][j] = profile(||x_i - x_j|| / delta). With
/// auto_select, pair search uses the spatial index beyond the brute-force
/// cutoff (or when the dimension keeps 3^d cell probes cheap).
inline sparse_sym_matrix assemble(const point_set& pts, const kernel_params& params,
                                  kernel_kind kind = kernel_kind::cinf,
                                  assembly_path path = assembly_path::auto_select) {
  if (pts.empty()) throw std::invalid_argument("assemble: empty point set");
  const std::size_t n = pts.size();
  if (path == assembly_path::auto_select)
    path = (n > detail::brute_force_cutoff && pts.dim() <= 8) ? assembly_path::spatial_index
                                                              : assembly_path::brute_force;

  const double diag = profile_of(kind, 0.0, params.alpha);
  std::vector<std::vector<std::pair<int, double>>> rows(n);

  if (path == assembly_path::brute_force) {
    parallel_for(n, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        for (std::size_t j = 0; j < i; ++j)
          if (pts.distance(i, j) < params.delta)
            rows[i].emplace_back(static_cast<int>(j), detail::gram_entry(pts, i, j, params, kind));
        rows[i].emplace_back(static_cast<int>(i), diag);
      }
    });
  } else {
    const spatial_grid grid(pts, params.delta);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        grid.for_candidates(pts.point(i), [&](int j) {
          if (static_cast<std::size_t>(j) < i &&
              pts.distance(i, static_cast<std::size_t>(j)) < params.delta)
            rows[i].emplace_back(j, detail::gram_entry(pts, i, static_cast<std::size_t>(j), params, kind));
        });
        std::sort(rows[i].begin(), rows[i].end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        rows[i].emplace_back(static_cast<int>(i), diag);
      }
    });
  }

  sparse_sym_matrix A;
  A.n = n;
  A.row_ptr.resize(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) A.row_ptr[i + 1] = A.row_ptr[i] + rows[i].size();
  A.col_idx.resize(A.row_ptr[n]);
  A.values.resize(A.row_ptr[n]);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = A.row_ptr[i];
    for (const auto& [j, v] : rows[i]) {
      A.col_idx[k] = j;
      A.values[k] = v;
      ++k;
    }
  }
  return A;
}

}  // namespace cinfrbf
