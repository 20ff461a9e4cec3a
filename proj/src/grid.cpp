#include "isosym/grid.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "isosym/error.hpp"

namespace isosym {

bool valid_grid_size(std::size_t n) { return n >= 64 && (n & (n - 1)) == 0; }

GradedGrid::GradedGrid(std::size_t size) : size_(size) {
  if (!valid_grid_size(size)) {
    throw DomainError("grid size must be a power of two >= 64, got " + std::to_string(size));
  }
  per_octave_ = size / (2 * kOctaves);
  const auto m = per_octave_;
  std::vector<double> left;
  left.reserve(kOctaves * m + 1);
  for (int k = kOctaves; k >= 1; --k) {
    const double a = std::ldexp(1.0, -(k + 1));
    for (std::size_t j = 0; j < m; ++j) {
      left.push_back(a + a * static_cast<double>(j) / static_cast<double>(m));
    }
  }
  left.push_back(0.5);
  nodes_ = left;
  for (auto it = left.rbegin() + 1; it != left.rend(); ++it) nodes_.push_back(1.0 - *it);
}

const GradedGrid& grid_of_size(std::size_t size) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<GradedGrid>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[size];
  if (!slot) slot = std::make_unique<GradedGrid>(size);
  return *slot;
}

const GradedGrid& default_grid() { return grid_of_size(4096); }

namespace {

// Octave-graded points below `from`, down past `target`.
void extend_toward_zero(std::vector<double>& out, double from, double target, std::size_t m) {
  double hi = from;
  while (hi > target / 256.0 && hi > 1e-300) {
    const double lo = hi / 2.0;
    for (std::size_t j = 0; j < m; ++j) {
      out.push_back(lo + lo * static_cast<double>(j) / static_cast<double>(m));
    }
    hi = lo;
  }
}

}  // namespace

Mesh::Mesh(const GradedGrid& grid, std::span<const double> breaks) {
  std::vector<double> pts(grid.nodes().begin(), grid.nodes().end());
  pts.push_back(0.0);
  pts.push_back(1.0);

  double low = grid.floor();
  double high_gap = grid.floor();
  for (double b : breaks) {
    if (!(b > 0.0 && b < 1.0)) continue;
    pts.push_back(b);
    low = std::min(low, b);
    high_gap = std::min(high_gap, 1.0 - b);
  }
  const std::size_t m = std::max<std::size_t>(grid.per_octave(), 4);
  if (low < grid.floor()) extend_toward_zero(pts, grid.floor(), low, m);
  if (high_gap < grid.floor()) {
    std::vector<double> mirrored;
    extend_toward_zero(mirrored, grid.floor(), high_gap, m);
    for (double x : mirrored) pts.push_back(1.0 - x);
  }

  std::sort(pts.begin(), pts.end());
  points_.reserve(pts.size());
  for (double x : pts) {
    if (!points_.empty()) {
      const double prev = points_.back();
      if (x - prev <= 4.0 * DBL_EPSILON * std::max(x, 1e-300)) continue;
    }
    points_.push_back(x);
  }
  if (points_.front() != 0.0) points_.insert(points_.begin(), 0.0);
  if (points_.back() != 1.0) points_.back() = 1.0;
}

std::size_t Mesh::locate(double t) const {
  if (t <= 0.0) return 0;
  if (t >= 1.0) return cells() - 1;
  auto it = std::upper_bound(points_.begin(), points_.end(), t);
  return static_cast<std::size_t>(it - points_.begin()) - 1;
}

}  // namespace isosym
