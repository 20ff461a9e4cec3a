#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace isosym {

/// Points of (0,1) graded geometrically toward both endpoints.
///
/// The left half is covered by the octaves [2^-(k+1), 2^-k], k = 1..32,
/// each split into `per_octave` uniform pieces; the right half mirrors it
/// through t -> 1 - t. A grid of nominal size N has N + 1 nodes, N/64 of
/// them per octave, and its smallest node is 2^-33.
class GradedGrid {
 public:
  static constexpr int kOctaves = 32;

  explicit GradedGrid(std::size_t size = 4096);

  std::size_t size() const { return size_; }
  std::size_t per_octave() const { return per_octave_; }
  double floor() const { return nodes_.front(); }

  /// All nodes, ascending, strictly inside (0,1); contains 1/2.
  std::span<const double> nodes() const { return nodes_; }
  /// Nodes in (0, 1/2], ascending.
  std::span<const double> left_nodes() const {
    return std::span<const double>(nodes_).first(nodes_.size() / 2 + 1);
  }

 private:
  std::size_t size_;
  std::size_t per_octave_;
  std::vector<double> nodes_;
};

/// Shared grids keyed by size; built once, never mutated.
const GradedGrid& grid_of_size(std::size_t size);
const GradedGrid& default_grid();

/// A partition 0 = x_0 < x_1 < ... < x_M = 1 obtained by merging a graded
/// grid with extra breakpoints (discontinuities or kinks of an integrand).
/// Breakpoints closer to an endpoint than the grid floor extend the
/// geometric grading past them.
class Mesh {
 public:
  explicit Mesh(const GradedGrid& grid, std::span<const double> breaks = {});

  std::span<const double> points() const { return points_; }
  std::size_t cells() const { return points_.size() - 1; }
  /// Smallest positive point.
  double floor() const { return points_[1]; }
  /// Largest point below 1.
  double ceiling() const { return points_[points_.size() - 2]; }
  /// Index i of the cell [x_i, x_{i+1}) containing t, for t in [0,1].
  std::size_t locate(double t) const;

 private:
  std::vector<double> points_;
};

/// True when n is a power of two no smaller than 64.
bool valid_grid_size(std::size_t n);

}  // namespace isosym
