#include "isosym/search.hpp"

#include <cmath>
#include <vector>

#include "isosym/error.hpp"

namespace isosym {

namespace {
constexpr double kInvPhi = 0.6180339887498949;

// NaN compares as the worst value.
bool better(double a, double b) { return !std::isnan(a) && (std::isnan(b) || a > b); }
}  // namespace

Extremum golden_max(const RealFn& f, double a, double b, double rel_tol, int max_iter) {
  Extremum best{f(a), a};
  const double fb = f(b);
  if (better(fb, best.value)) best = {fb, b};
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < max_iter; ++it) {
    if (b - a <= rel_tol * (std::abs(a) + std::abs(b))) break;
    if (better(f1, f2) || f1 == f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  if (better(f1, best.value)) best = {f1, x1};
  if (better(f2, best.value)) best = {f2, x2};
  return best;
}

Extremum grid_sup(const RealFn& f, std::span<const double> xs, bool refine, Exec exec) {
  if (xs.empty()) throw EmptyInputError("grid_sup: no candidates");
  const auto values = kernels::evaluate(f, xs, exec);
  std::size_t k = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (better(values[i], values[k])) k = i;
  }
  Extremum best{values[k], xs[k]};
  if (!refine || xs.size() < 2 || !std::isfinite(best.value)) return best;
  const double lo = xs[k == 0 ? 0 : k - 1];
  const double hi = xs[k + 1 == xs.size() ? k : k + 1];
  const auto refined = golden_max(f, lo, hi);
  if (better(refined.value, best.value)) best = refined;
  return best;
}

Extremum grid_inf(const RealFn& f, std::span<const double> xs, bool refine, Exec exec) {
  const RealFn neg = [&f](double x) { return -f(x); };
  auto r = grid_sup(neg, xs, refine, exec);
  r.value = -r.value;
  return r;
}

}  // namespace isosym
