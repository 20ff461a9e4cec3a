#pragma once

#include <vector>

#include "isosym/grid.hpp"
#include "isosym/profile.hpp"

namespace isosym {

/// Values with probability weights; empty weights mean uniform.
struct WeightedSample {
  std::vector<double> values;
  std::vector<double> weights;
};

/// Right-continuous step profile of |values| sorted downward.
QuantileProfile decreasing_rearrangement(const WeightedSample& s);
/// Right-continuous step profile of values sorted downward.
QuantileProfile signed_rearrangement(const WeightedSample& s);

/// Lebesgue rearrangements of a transfer profile. Monotone F is rearranged
/// exactly (reflection for nondecreasing F); otherwise F is sampled at the
/// Gauss points of the mesh and the sorted values are interpolated.
QuantileProfile decreasing_rearrangement(const TransferProfile& F,
                                         const GradedGrid& grid = default_grid());
QuantileProfile signed_rearrangement(const TransferProfile& F,
                                     const GradedGrid& grid = default_grid());

/// f**(t) = (1/t) * integral of f* over (0,t).
QuantileProfile maximal(const QuantileProfile& p, const GradedGrid& grid = default_grid());

/// f-star(1/2).
double median(const QuantileProfile& p);

/// min(t2 - t1, max(0, F - t1)).
TransferProfile truncate(const TransferProfile& F, double t1, double t2);

}  // namespace isosym
