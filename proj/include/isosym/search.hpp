#pragma once

#include <span>

#include "isosym/kernels.hpp"

namespace isosym {

struct Extremum {
  double value;
  double argument;
};

/// Golden-section search for a maximum of f on [a,b]. Returns the best point
/// seen, including both endpoints.
Extremum golden_max(const RealFn& f, double a, double b, double rel_tol = 1e-13,
                    int max_iter = 200);

/// Maximum of f over ascending candidates xs, refined by golden-section in
/// [x_{k-1}, x_{k+1}] around the best candidate k. The result is never below
/// the best grid value. Candidate evaluation runs under `exec`.
Extremum grid_sup(const RealFn& f, std::span<const double> xs, bool refine = true,
                  Exec exec = Exec::Serial);

/// Minimum counterpart of grid_sup.
Extremum grid_inf(const RealFn& f, std::span<const double> xs, bool refine = true,
                  Exec exec = Exec::Serial);

}  // namespace isosym
