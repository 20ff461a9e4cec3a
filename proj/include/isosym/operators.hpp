#pragma once

#include <span>
#include <string>
#include <vector>

#include "isosym/grid.hpp"
#include "isosym/measures.hpp"
#include "isosym/profile.hpp"

namespace isosym {

enum class HardyKind { P, Q };

struct OperatorResult {
  Profile output;
  std::string tag;
  std::string estimator;
  std::size_t grid_size = 0;

  double operator()(double t) const { return output(t); }
};

/// Pf(t) = (1/t) int_0^t f,  Qf(t) = int_t^1 f(s) ds/s.
OperatorResult hardy(const Profile& f, HardyKind kind, const GradedGrid& grid = default_grid());

/// int_t^{1/2} f(s) ds / I(s) for t in (0,1); negative to the right of 1/2.
/// Evaluated lazily: only a request at t = 0 with a divergent head throws.
OperatorResult q_bar(const ConvexEstimator& est, const Profile& f,
                     const GradedGrid& grid = default_grid());

/// (I(t)/t) * q_bar(t) on (0,1/2), 0 elsewhere.
OperatorResult q_tilde(const ConvexEstimator& est, const Profile& f,
                       const GradedGrid& grid = default_grid());

/// sup over s < t <= 1/2 of (t - s)/I(t).
double beta1(const ConvexEstimator& est, double s);

/// sup over 0 < s < t of (t - s)/beta1(s); never exceeds I(t) up to rounding.
double recover_estimator(const ConvexEstimator& est, double t);
std::vector<double> recover_estimator_sweep(const ConvexEstimator& est, std::span<const double> ts,
                                            Exec exec = kernels::default_exec());

/// (I(t)/t) * int_t^{1/2} ds/I(s).
double peso_value(const ConvexEstimator& est, double t);

/// sup over t in (0,1/2) of peso_value, including the limit t -> 0 obtained by
/// marching octaves below the grid floor. +infinity when the sup diverges.
double peso_constant(const ConvexEstimator& est, const GradedGrid& grid = default_grid());

}  // namespace isosym
