#pragma once

#include <memory>
#include <string>
#include <vector>

#include "isosym/grid.hpp"
#include "isosym/profile.hpp"

namespace isosym {

enum class SpaceKind { Lp, Lorentz, LorentzZygmund, Weighted, Marcinkiewicz, Lambda };

/// Descriptor of a rearrangement-invariant (quasi-)space on (0,1).
///
/// Lp(p), Lorentz(p,q) and LorentzZygmund(p,q,a) accept p, q = +infinity.
/// Weighted(base, w) is normed by ||f* w|| in the base space, Marcinkiewicz(phi)
/// by sup f* phi, and Lambda(phi) by the Stieltjes integral of f* against phi.
class RISpace {
 public:
  static RISpace lp(double p);
  static RISpace lorentz(double p, double q);
  static RISpace lorentz_zygmund(double p, double q, double a);
  static RISpace weighted(const RISpace& base, Profile weight);
  static RISpace marcinkiewicz(Profile phi);
  static RISpace lambda(Profile phi);

  SpaceKind kind() const { return kind_; }
  double p() const { return p_; }
  double q() const { return q_; }
  double a() const { return a_; }
  const RISpace& base() const { return *base_; }
  const Profile& weight() const { return weight_; }
  std::string name() const;

 private:
  RISpace() = default;
  SpaceKind kind_ = SpaceKind::Lp;
  double p_ = 1.0;
  double q_ = 1.0;
  double a_ = 0.0;
  std::shared_ptr<const RISpace> base_;
  Profile weight_;
  std::string weight_label_;
  friend RISpace with_weight_label(RISpace, std::string);
};

/// Attaches a printable label to a Weighted, Marcinkiewicz or Lambda space.
RISpace with_weight_label(RISpace space, std::string label);

/// Quasi-norm of a nonincreasing profile. Divergence gives +infinity.
double quasinorm(const RISpace& X, const QuantileProfile& f, const GradedGrid& grid = default_grid());

/// Norm in the representation space of a function g on (0,1) that need not
/// be monotone: Lp integrates |g| directly, other spaces rearrange |g| first.
double norm_of_function(const RISpace& X, const Profile& g, const GradedGrid& grid = default_grid());

/// Norm of the indicator of [0,t).
double fundamental(const RISpace& X, double t, const GradedGrid& grid = default_grid());

/// E_s f(t) = f*(t/s) for t < s, 0 for s <= t < 1.
QuantileProfile dilation(const QuantileProfile& f, double s);

struct BoydIndices {
  double lower;
  double upper;
};
enum class BoydMode { Analytic, Numeric };

/// Boyd indices. Analytic mode covers Lp, Lorentz and Lorentz-Zygmund;
/// numeric mode estimates the dilation norms over power/log probes.
BoydIndices boyd(const RISpace& X, BoydMode mode = BoydMode::Analytic);

/// Least concave majorant of the points (xs[i], ys[i]), as a piecewise-linear
/// profile through the upper hull vertices.
Profile concave_majorant(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace isosym
