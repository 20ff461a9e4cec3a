#include "isosym/profile.hpp"

#include <algorithm>
#include <cmath>

#include "isosym/error.hpp"

namespace isosym {

namespace {

double probe_limit(const RealFn& fn, bool at_zero) {
  const double e1 = std::ldexp(1.0, -500);
  const double e2 = std::ldexp(1.0, -1000);
  double v1, v2;
  try {
    v1 = at_zero ? fn(e1) : fn(1.0 - std::ldexp(1.0, -40));
    v2 = at_zero ? fn(e2) : fn(1.0 - std::ldexp(1.0, -52));
  } catch (const IntegrabilityError&) {
    return HUGE_VAL;
  }
  if (!std::isfinite(v2)) return v2;
  if (std::abs(v2 - v1) <= 1e-9 * std::max(1.0, std::abs(v1))) return v2;
  return std::copysign(HUGE_VAL, v2 - v1);
}

}  // namespace

double Profile::limit_at_zero() const { return left_limit ? *left_limit : probe_limit(fn, true); }
double Profile::limit_at_one() const { return right_limit ? *right_limit : probe_limit(fn, false); }

Profile Profile::constant(double c) {
  return Profile{[c](double) { return c; }, {}, [](double) { return 0.0; }, c, c};
}

Profile Profile::indicator(double a, double b, double c) {
  Profile p{[a, b, c](double t) { return (t >= a && t < b) ? c : 0.0; }, {},
            [](double) { return 0.0; }, std::nullopt, std::nullopt};
  if (a > 0.0 && a < 1.0) p.breaks.push_back(a);
  if (b > 0.0 && b < 1.0) p.breaks.push_back(b);
  p.left_limit = a <= 0.0 && b > 0.0 ? c : 0.0;
  p.right_limit = b >= 1.0 && a < 1.0 ? c : 0.0;
  return p;
}

Profile Profile::power(double c, double e) {
  Profile p{[c, e](double t) { return c * std::pow(t, e); }, {},
            [c, e](double t) { return c * e * std::pow(t, e - 1.0); }, std::nullopt, c};
  if (e > 0.0) p.left_limit = 0.0;
  else if (e == 0.0) p.left_limit = c;
  else p.left_limit = c == 0.0 ? 0.0 : std::copysign(HUGE_VAL, c);
  return p;
}

Profile Profile::steps(std::vector<double> cuts, std::vector<double> values) {
  if (values.empty() || cuts.size() != values.size() + 1) {
    throw DomainError("steps: need one more cut than values");
  }
  if (!std::is_sorted(cuts.begin(), cuts.end())) throw DomainError("steps: cuts must ascend");
  Profile p;
  for (std::size_t i = 1; i + 1 < cuts.size(); ++i) p.breaks.push_back(cuts[i]);
  p.left_limit = values.front();
  p.right_limit = values.back();
  p.derivative = [](double) { return 0.0; };
  p.fn = [cuts = std::move(cuts), values = std::move(values)](double t) {
    auto it = std::upper_bound(cuts.begin(), cuts.end(), t);
    auto i = static_cast<std::ptrdiff_t>(it - cuts.begin()) - 1;
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(values.size()) - 1);
    return values[static_cast<std::size_t>(i)];
  };
  return p;
}

Profile Profile::linear_interpolant(std::vector<double> xs, std::vector<double> ys) {
  if (xs.empty() || xs.size() != ys.size()) throw DomainError("interpolant: size mismatch");
  Profile p;
  for (double x : xs) {
    if (x > 0.0 && x < 1.0) p.breaks.push_back(x);
  }
  p.left_limit = ys.front();
  p.right_limit = ys.back();
  p.derivative = [xs, ys](double t) {
    if (t <= xs.front() || t >= xs.back()) return 0.0;
    auto it = std::upper_bound(xs.begin(), xs.end(), t);
    const auto i = static_cast<std::size_t>(it - xs.begin());
    return (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
  };
  p.fn = [xs = std::move(xs), ys = std::move(ys)](double t) {
    if (t <= xs.front()) return ys.front();
    if (t >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), t);
    const auto i = static_cast<std::size_t>(it - xs.begin());
    const double w = (t - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
  };
  return p;
}

Profile Profile::scaled(double c) const {
  Profile p{[fn = fn, c](double t) { return c * fn(t); }, breaks, nullptr, std::nullopt,
            std::nullopt};
  if (derivative) p.derivative = [d = derivative, c](double t) { return c * d(t); };
  if (left_limit) p.left_limit = c == 0.0 ? 0.0 : c * *left_limit;
  if (right_limit) p.right_limit = c == 0.0 ? 0.0 : c * *right_limit;
  return p;
}

std::vector<double> QuantileProfile::sampled(const GradedGrid& grid, Exec exec) const {
  return kernels::evaluate(profile.fn, grid.nodes(), exec);
}

double TransferProfile::slope(double t) const {
  if (value.derivative) return value.derivative(t);
  const double h = 1e-6 * std::min(t, 1.0 - t);
  return (value(t + h) - value(t - h)) / (2.0 * h);
}

TransferProfile TransferProfile::ramp_down(double a) {
  Profile v{[a](double t) { return std::max(a - t, 0.0); }, {},
            [a](double t) { return t < a ? -1.0 : 0.0; }, a, std::max(a - 1.0, 0.0)};
  if (a > 0.0 && a < 1.0) v.breaks.push_back(a);
  return {std::move(v), Monotonicity::Nonincreasing};
}

TransferProfile TransferProfile::affine(double c0, double c1) {
  Profile v{[c0, c1](double t) { return c0 + c1 * t; }, {}, [c1](double) { return c1; }, c0,
            c0 + c1};
  const auto mono = c1 > 0.0 ? Monotonicity::Nondecreasing : Monotonicity::Nonincreasing;
  return {std::move(v), mono};
}

TransferProfile TransferProfile::from(Profile value, Monotonicity monotone) {
  return {std::move(value), monotone};
}

}  // namespace isosym
