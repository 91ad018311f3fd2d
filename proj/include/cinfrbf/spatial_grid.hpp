#pragma once

#include <cinfrbf/point_set.hpp>

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace cinfrbf {

/// Uniform-cell spatial index for fixed-radius neighbor queries. Cell edge
/// equals the query radius, so all neighbors of a point live in the 3^d
/// surrounding cells.
class spatial_grid {
 public:
  spatial_grid(const point_set& pts, double radius) : pts_(&pts), radius_(radius) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      cells_[cell_of(pts.point(i))].push_back(static_cast<int>(i));
  }

  /// Calls fn(j) for every point j whose cell neighbors the query's cell.
  /// Candidates are a superset of the true in-radius neighbors; callers
  /// filter by exact distance.
  template <class Fn>
  void for_candidates(std::span<const double> q, Fn&& fn) const {
    const int d = pts_->dim();
    std::vector<std::int64_t> base = cell_of(q);
    std::vector<std::int64_t> probe(base);
    std::vector<int> offset(static_cast<std::size_t>(d), -1);
    while (true) {
      for (int k = 0; k < d; ++k)
        probe[static_cast<std::size_t>(k)] =
            base[static_cast<std::size_t>(k)] + offset[static_cast<std::size_t>(k)];
      if (auto it = cells_.find(probe); it != cells_.end())
        for (int j : it->second) fn(j);
      int k = 0;
      while (k < d && ++offset[static_cast<std::size_t>(k)] > 1) {
        offset[static_cast<std::size_t>(k)] = -1;
        ++k;
      }
      if (k == d) break;
    }
  }

  double radius() const { return radius_; }

 private:
  struct key_hash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (std::int64_t x : v) {
        h ^= static_cast<std::size_t>(x);
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  std::vector<std::int64_t> cell_of(std::span<const double> p) const {
    std::vector<std::int64_t> key(p.size());
    for (std::size_t k = 0; k < p.size(); ++k)
      key[k] = static_cast<std::int64_t>(std::floor(p[k] / radius_));
    return key;
  }

  const point_set* pts_;
  double radius_;
  std::unordered_map<std::vector<std::int64_t>, std::vector<int>, key_hash> cells_;
};

}  // namespace cinfrbf
