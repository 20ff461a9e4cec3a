#pragma once

#include <optional>
#include <span>
#include <vector>

#include "isosym/grid.hpp"
#include "isosym/kernels.hpp"

namespace isosym {

/// A real function on (0,1) together with the points where it may jump or
/// kink. Quadrature meshes are refined at those points.
struct Profile {
  RealFn fn;
  std::vector<double> breaks;
  /// Derivative away from the breaks, when known exactly.
  RealFn derivative;
  /// Limits at 0+ and 1- when known in closed form (possibly infinite).
  std::optional<double> left_limit;
  std::optional<double> right_limit;

  double operator()(double t) const { return fn(t); }

  /// Limit at 0+, estimated by probing when not stored.
  double limit_at_zero() const;
  /// Limit at 1-, estimated by probing when not stored.
  double limit_at_one() const;

  static Profile constant(double c);
  /// c on [a,b), 0 elsewhere.
  static Profile indicator(double a, double b, double c = 1.0);
  /// c * t^e.
  static Profile power(double c, double e);
  /// values[i] on [cuts[i], cuts[i+1]) with cuts[0] = 0 and cuts.back() = 1.
  static Profile steps(std::vector<double> cuts, std::vector<double> values);
  /// Piecewise-linear interpolant through (xs, ys), xs ascending in [0,1];
  /// constant extension outside [xs.front(), xs.back()].
  static Profile linear_interpolant(std::vector<double> xs, std::vector<double> ys);

  Profile scaled(double c) const;
};

enum class ProfileKind { Nonincreasing, Signed };

/// A nonincreasing function on (0,1): the home of decreasing (f*) and signed
/// (f-star) rearrangements. Nonincreasing profiles are nonnegative.
struct QuantileProfile {
  Profile profile;
  ProfileKind kind = ProfileKind::Nonincreasing;

  double operator()(double t) const { return profile(t); }
  std::span<const double> breaks() const { return profile.breaks; }
  /// Values at the nodes of a grid (plus limits are not included).
  std::vector<double> sampled(const GradedGrid& grid, Exec exec = kernels::default_exec()) const;
};

enum class Monotonicity { None, Nonincreasing, Nondecreasing };

/// Transfer profile F on (0,1), as used by u(x) = F(H(x_1)). The slope is
/// exact where the value carries a derivative; otherwise it is a centered
/// difference quotient.
struct TransferProfile {
  Profile value;
  Monotonicity monotone = Monotonicity::None;

  double operator()(double t) const { return value(t); }
  double slope(double t) const;
  std::span<const double> breaks() const { return value.breaks; }

  /// F(t) = (a - t)_+ with derivative -1 on (0,a).
  static TransferProfile ramp_down(double a);
  /// F(t) = c0 + c1 t.
  static TransferProfile affine(double c0, double c1);
  static TransferProfile from(Profile value, Monotonicity monotone = Monotonicity::None);
};

}  // namespace isosym
