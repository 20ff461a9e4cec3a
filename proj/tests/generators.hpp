#pragma once

// Hand-rolled generators for property tests: a splitmix64 stream and a few
// shapes of random inputs built from it.

#include <cmath>
#include <cstdint>
#include <vector>

#include "isosym/profile.hpp"
#include "isosym/rearrange.hpp"

namespace gen {

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in (0,1).
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Log-uniform in [a,b], a > 0.
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

 private:
  std::uint64_t state_;
};

/// Sample of n values in [-5,5] with random positive weights summing to 1,
/// with a few repeated values.
inline isosym::WeightedSample weighted_sample(Stream& s, std::size_t n) {
  isosym::WeightedSample out;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = (i > 0 && s.uniform() < 0.2) ? out.values[i - 1] : s.uniform(-5.0, 5.0);
    out.values.push_back(v);
    out.weights.push_back(s.uniform(0.1, 1.0));
    total += out.weights.back();
  }
  for (double& w : out.weights) w /= total;
  return out;
}

/// Nonnegative step profile with k random pieces vanishing on [1/2, 1).
inline isosym::Profile step_profile(Stream& s, int k) {
  std::vector<double> cuts{0.0};
  for (int i = 1; i < k; ++i) cuts.push_back(0.5 * i / k + s.uniform(-0.2, 0.2) / k);
  cuts.push_back(0.5);
  cuts.push_back(1.0);
  std::vector<double> values;
  for (int i = 0; i < k; ++i) values.push_back(s.uniform(0.0, 3.0));
  values.push_back(0.0);
  return isosym::Profile::steps(cuts, values);
}

/// Nonnegative piecewise-linear profile through k random points of (0,1).
inline isosym::Profile linear_profile(Stream& s, int k) {
  std::vector<double> xs{0.0}, ys{s.uniform(0.0, 2.0)};
  for (int i = 1; i < k; ++i) {
    xs.push_back(static_cast<double>(i) / k);
    ys.push_back(s.uniform(0.0, 2.0));
  }
  xs.push_back(1.0);
  ys.push_back(s.uniform(0.0, 2.0));
  return isosym::Profile::linear_interpolant(xs, ys);
}

}  // namespace gen
