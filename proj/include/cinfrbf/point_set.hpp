#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cinfrbf {

/// Scattered data sites: n points of dimension dim, stored row-major.
class point_set {
 public:
  point_set() = default;

  point_set(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ < 1) throw std::domain_error("point_set: dimension must be >= 1");
    if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
      throw std::invalid_argument("point_set: coordinate count not a multiple of dim");
    for (double c : coords_)
      if (!std::isfinite(c)) throw std::domain_error("point_set: non-finite coordinate");
  }

  static point_set from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("point_set: no points");
    const int dim = static_cast<int>(rows.front().size());
    std::vector<double> coords;
    coords.reserve(rows.size() * static_cast<std::size_t>(dim));
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != dim)
        throw std::invalid_argument("point_set: ragged rows");
      coords.insert(coords.end(), r.begin(), r.end());
    }
    return point_set(dim, std::move(coords));
  }

  int dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }

  const std::vector<double>& coords() const { return coords_; }

  double distance(std::size_t i, std::size_t j) const {
    return std::sqrt(squared_distance(point(i), point(j)));
  }

  static double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double diff = a[k] - b[k];
      sq += diff * diff;
    }
    return sq;
  }

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

/// Coordinate-wise closeness used for duplicate detection.
inline bool coordinatewise_close(std::span<const double> a, std::span<const double> b,
                                 double tol = 1e-12) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > tol) return false;
  return true;
}

struct duplicate_points_error : std::runtime_error {
  std::size_t first;
  std::size_t second;
  duplicate_points_error(std::size_t i, std::size_t j)
      : std::runtime_error("duplicate points at indices " + std::to_string(i) + " and " +
                           std::to_string(j)),
        first(i),
        second(j) {}
};

struct axis_box {
  std::vector<double> lo;
  std::vector<double> hi;

  static axis_box unit(int dim) {
    return {std::vector<double>(static_cast<std::size_t>(dim), 0.0),
            std::vector<double>(static_cast<std::size_t>(dim), 1.0)};
  }
};

/// Largest distance from any probe of a dense grid over the box to its
/// nearest data site. The probe grid uses up to 64 cells per axis, capped at
/// 10^6 probes total, with probes inclusive of the box faces.
inline double fill_distance(const point_set& pts, const axis_box& box) {
  if (pts.empty()) throw std::invalid_argument("fill_distance: empty point set");
  const int d = pts.dim();
  if (static_cast<int>(box.lo.size()) != d || static_cast<int>(box.hi.size()) != d)
    throw std::invalid_argument("fill_distance: box dimension mismatch");

  int m = 64;
  while (m > 1 && std::pow(static_cast<double>(m + 1), d) > 1e6) --m;

  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> probe(static_cast<std::size_t>(d), 0.0);
  double worst = 0.0;
  while (true) {
    for (int k = 0; k < d; ++k)
      probe[static_cast<std::size_t>(k)] =
          box.lo[static_cast<std::size_t>(k)] +
          (box.hi[static_cast<std::size_t>(k)] - box.lo[static_cast<std::size_t>(k)]) *
              static_cast<double>(idx[static_cast<std::size_t>(k)]) / static_cast<double>(m);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double sq = point_set::squared_distance(probe, pts.point(i));
      if (sq < best) best = sq;
    }
    worst = std::max(worst, best);

    int k = 0;
    while (k < d && ++idx[static_cast<std::size_t>(k)] > m) {
      idx[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == d) break;
  }
  return std::sqrt(worst);
}

}  // namespace cinfrbf
