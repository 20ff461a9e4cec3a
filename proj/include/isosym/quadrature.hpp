#pragma once

#include <array>
#include <span>
#include <vector>

#include "isosym/grid.hpp"
#include "isosym/kernels.hpp"

namespace isosym {

/// 16-point Gauss-Legendre rule on [0,1].
struct GaussRule {
  static constexpr std::size_t kPoints = 16;
  std::array<double, kPoints> nodes;
  std::array<double, kPoints> weights;
};
const GaussRule& gauss16();

double integrate_cell(const RealFn& g, double a, double b);

/// Integral over [0,a] assuming g behaves like C t^lambda there, with lambda
/// fitted from g(a) and g(a/2). Returns a signed infinity when lambda <= -1.
double head_integral(const RealFn& g, double a);
/// Mirror of head_integral: integral over [1-a, 1].
double tail_integral(const RealFn& g, double a);

/// Integral over [a,b] with 0 < a < b < 1, graded by octaves toward
/// whichever endpoint of (0,1) is near.
double integrate(const RealFn& g, double a, double b);

/// Integral over (0,1) on the mesh of `grid` refined at `breaks`, with
/// power-law end cells. Divergence yields a signed infinity.
double integrate_unit(const RealFn& g, const GradedGrid& grid, std::span<const double> breaks = {},
                      Exec exec = kernels::default_exec());

/// Antiderivative A(t) = integral of g from `anchor` to t over (0,1).
///
/// Cell integrals on a graded mesh are accumulated outward from the anchor,
/// so values near the anchor carry no cancellation from far-away mass. The
/// end cells [0, floor] and [ceiling, 1] use power-law extrapolation, exact
/// for pure powers. Evaluating at a point whose integral diverges throws
/// IntegrabilityError.
class Antiderivative {
 public:
  Antiderivative(RealFn g, const GradedGrid& grid, std::span<const double> breaks, double anchor,
                 Exec exec = kernels::default_exec());

  double operator()(double t) const;
  double anchor() const { return anchor_; }
  const Mesh& mesh() const { return mesh_; }
  /// Integral over the head cell [0, floor]; may be infinite.
  double head() const { return head_; }
  /// Integral over the tail cell [ceiling, 1]; may be infinite.
  double tail() const { return tail_; }
  bool finite_at_zero() const;
  bool finite_at_one() const;

 private:
  RealFn g_;
  Mesh mesh_;
  double anchor_;
  std::size_t anchor_index_;
  std::vector<double> cumulative_;  // integral from anchor to x_i (signed)
  double head_ = 0.0;
  double tail_ = 0.0;
};

}  // namespace isosym
