#include "isosym/functions.hpp"

#include <algorithm>
#include <cmath>

#include "isosym/error.hpp"
#include "isosym/quadrature.hpp"
#include "isosym/rearrange.hpp"

namespace isosym {

TestFunction TestFunction::transfer(TransferProfile F, const ProductMeasure& m) {
  if (!F.value.fn) throw DomainError("transfer: profile has no values");
  TestFunction u(Rep::Transfer, m);
  u.F_ = std::move(F);
  return u;
}

TestFunction TestFunction::sampled(const ProductMeasure& m, std::shared_ptr<const PointCloud> points,
                                   std::vector<double> values, std::vector<double> gradients) {
  if (values.empty()) throw EmptyInputError("sampled function without samples");
  if (values.size() != gradients.size() || (points && points->size() != values.size())) {
    throw DomainError("sampled function: sizes disagree");
  }
  for (double g : gradients) {
    if (!(g >= 0.0)) throw DomainError("sampled function: gradient moduli must be nonnegative");
  }
  TestFunction u(Rep::Sampled, m);
  u.points_ = std::move(points);
  u.values_ = std::move(values);
  u.grads_ = std::move(gradients);
  return u;
}

TestFunction TestFunction::with_label(std::string label) const {
  TestFunction u = *this;
  u.label_ = std::move(label);
  return u;
}

TestFunction TestFunction::with_bumps(std::vector<Bump> bumps) const {
  TestFunction u = *this;
  u.bumps_ = std::move(bumps);
  return u;
}

TestFunction TestFunction::with_gradient(Profile g) const {
  if (rep_ != Rep::Transfer) throw DomainError("gradient override applies to transfer functions");
  TestFunction u = *this;
  u.gradient_ = std::move(g);
  return u;
}

Profile TestFunction::gradient_profile() const {
  if (rep_ != Rep::Transfer) throw DomainError("gradient profile is defined for transfer functions");
  if (gradient_) return *gradient_;
  Profile g;
  g.fn = [F = F_, base = measure_.base](double t) {
    const double d = F.slope(t);
    return d == 0.0 ? 0.0 : std::abs(d) * exact_profile(base, t);
  };
  g.breaks = F_.value.breaks;
  return g;
}

QuantileProfile TestFunction::signed_star(const GradedGrid& grid) const {
  if (rep_ == Rep::Transfer) return signed_rearrangement(F_, grid);
  return signed_rearrangement(WeightedSample{values_, {}});
}

QuantileProfile TestFunction::star(const GradedGrid& grid) const {
  if (rep_ == Rep::Transfer) return decreasing_rearrangement(F_, grid);
  return decreasing_rearrangement(WeightedSample{values_, {}});
}

QuantileProfile TestFunction::gradient_star(const GradedGrid& grid) const {
  if (rep_ == Rep::Sampled) return decreasing_rearrangement(WeightedSample{grads_, {}});
  return decreasing_rearrangement(TransferProfile::from(gradient_profile()), grid);
}

double TestFunction::oscillation() const {
  if (rep_ == Rep::Sampled) {
    const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    return *hi - *lo;
  }
  const auto s = signed_star();
  const double hi = s.profile.limit_at_zero();
  const double lo = s.profile.limit_at_one();
  if (hi == lo) return 0.0;
  return hi - lo;
}

double TestFunction::median() const { return isosym::median(signed_star()); }

double TestFunction::integral_abs(double c, const GradedGrid& grid) const {
  if (rep_ == Rep::Sampled) {
    double sum = 0.0;
    for (double v : values_) sum += std::abs(v - c);
    return sum / static_cast<double>(values_.size());
  }
  const RealFn g = [F = F_.value.fn, c](double t) { return std::abs(F(t) - c); };
  return integrate_unit(g, grid, F_.value.breaks);
}

double TestFunction::integral_gradient(const GradedGrid& grid) const {
  if (rep_ == Rep::Sampled) {
    double sum = 0.0;
    for (double g : grads_) sum += g;
    return sum / static_cast<double>(grads_.size());
  }
  const auto g = gradient_profile();
  return integrate_unit(g.fn, grid, g.breaks);
}

TestFunction TestFunction::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("scaled: factor must be positive");
  TestFunction u = *this;
  if (rep_ == Rep::Transfer) {
    u.F_.value = F_.value.scaled(lambda);
    if (gradient_) u.gradient_ = gradient_->scaled(lambda);
  } else {
    for (double& v : u.values_) v *= lambda;
    for (double& g : u.grads_) g *= lambda;
    for (auto& b : u.bumps_) b.amplitude *= lambda;
  }
  return u;
}

TestFunction TestFunction::recentred() const {
  const double m = median();
  TestFunction u = *this;
  if (m == 0.0) return u;
  if (rep_ == Rep::Transfer) {
    Profile v = F_.value;
    v.fn = [fn = F_.value.fn, m](double t) { return fn(t) - m; };
    if (F_.value.left_limit) v.left_limit = *F_.value.left_limit - m;
    if (F_.value.right_limit) v.right_limit = *F_.value.right_limit - m;
    u.F_.value = std::move(v);
  } else {
    for (double& v : u.values_) v -= m;
  }
  return u;
}

TestFunction TestFunction::positive_part() const {
  const TestFunction u = recentred();
  if (rep_ == Rep::Sampled) {
    TestFunction v = u;
    for (std::size_t i = 0; i < v.values_.size(); ++i) {
      if (v.values_[i] <= 0.0) {
        v.values_[i] = 0.0;
        v.grads_[i] = 0.0;
      }
    }
    return v;
  }
  if (u.signed_star().profile.limit_at_one() >= 0.0) return u;
  TestFunction v = u;
  v.F_ = truncate(u.F_, 0.0, HUGE_VAL);
  v.gradient_.reset();
  if (u.gradient_) {
    Profile g = *u.gradient_;
    g.fn = [g0 = u.gradient_->fn, F = u.F_.value.fn](double t) { return F(t) > 0.0 ? g0(t) : 0.0; };
    v.gradient_ = std::move(g);
  }
  return v;
}

TestFunction coordinate(const ProductMeasure& m) {
  Profile F;
  const auto base = m.base;
  F.fn = [base](double t) { return base.quantile(t); };
  F.derivative = [base](double t) { return 1.0 / base.density(base.quantile(t)); };
  F.left_limit = -HUGE_VAL;
  F.right_limit = HUGE_VAL;
  Profile g;
  g.fn = [](double) { return 1.0; };
  g.derivative = [](double) { return 0.0; };
  g.left_limit = 1.0;
  g.right_limit = 1.0;
  return TestFunction::transfer(TransferProfile::from(std::move(F), Monotonicity::Nondecreasing), m)
      .with_gradient(std::move(g))
      .with_label("x1");
}

TestFunction transfer(TransferProfile F, const ProductMeasure& m) {
  return TestFunction::transfer(std::move(F), m);
}

TestFunction extremal(const Profile& f, const ProductMeasure& m, const GradedGrid& grid) {
  for (double t : grid.nodes()) {
    const double v = f(t);
    if (!(v >= 0.0)) throw DomainError("extremal: f must be nonnegative");
    if (t >= 0.5 && v != 0.0) throw DomainError("extremal: f must vanish on [1/2, 1)");
  }
  const auto base = m.base;
  const RealFn integrand = [fn = f.fn, base](double s) {
    const double v = fn(s);
    return v == 0.0 ? 0.0 : v / exact_profile(base, s);
  };
  auto prim = std::make_shared<Antiderivative>(integrand, grid, f.breaks, 1.0);
  if (!std::isfinite((*prim)(prim->mesh().floor()))) {
    throw IntegrabilityError("extremal: f/I is not integrable above the grid floor");
  }
  Profile F;
  F.fn = [prim](double t) { return -(*prim)(t); };
  F.derivative = [integrand](double t) { return -integrand(t); };
  F.breaks = f.breaks;
  F.left_limit = prim->finite_at_zero() ? -(*prim)(0.0) : HUGE_VAL;
  F.right_limit = 0.0;
  return TestFunction::transfer(TransferProfile::from(std::move(F), Monotonicity::Nonincreasing), m)
      .with_gradient(f);
}

std::pair<double, double> evaluate_bumps(const std::vector<Bump>& bumps, const double* x, int dimension) {
  double value = 0.0;
  std::vector<double> grad(static_cast<std::size_t>(dimension), 0.0);
  for (const auto& b : bumps) {
    double r2 = 0.0;
    for (int j = 0; j < dimension; ++j) {
      const double d = x[j] - b.center[static_cast<std::size_t>(j)];
      r2 += d * d;
    }
    const double s2 = b.sigma * b.sigma;
    const double e = b.amplitude * std::exp(-0.5 * r2 / s2);
    value += e;
    for (int j = 0; j < dimension; ++j) {
      grad[static_cast<std::size_t>(j)] -= e * (x[j] - b.center[static_cast<std::size_t>(j)]) / s2;
    }
  }
  double g2 = 0.0;
  for (double g : grad) g2 += g * g;
  return {value, std::sqrt(g2)};
}

std::vector<TestFunction> bump_family(const ProductMeasure& m, std::size_t count, std::uint64_t seed,
                                      std::size_t points, Exec exec) {
  if (count == 0) throw EmptyInputError("bump_family: count must be positive");
  auto cloud = std::make_shared<const PointCloud>(sample(m, points, seed, exec));
  const int n = m.dimension;
  // Parameters come from a stream disjoint from the sample points.
  const std::uint64_t pseed = seed ^ 0x5bd1e9955bd1e995ULL;
  std::vector<TestFunction> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::uint64_t c = 0;
    auto u = [&] { return counter_uniform(pseed, k, c++); };
    const int nb = 1 + static_cast<int>(u() * 3.0);
    std::vector<Bump> bumps;
    for (int b = 0; b < nb; ++b) {
      Bump bump;
      for (int j = 0; j < n; ++j) bump.center.push_back(m.base.quantile(0.1 + 0.8 * u()));
      bump.sigma = 0.5 + 1.5 * u();
      bump.amplitude = 2.0 * u() - 1.0;
      bumps.push_back(std::move(bump));
    }
    std::vector<double> values(cloud->size()), grads(cloud->size());
    kernels::for_each_index(
        cloud->size(),
        [&](std::size_t i) {
          const auto [v, g] = evaluate_bumps(bumps, &cloud->coords[i * static_cast<std::size_t>(n)], n);
          values[i] = v;
          grads[i] = g;
        },
        exec);
    out.push_back(TestFunction::sampled(m, cloud, std::move(values), std::move(grads))
                      .with_bumps(std::move(bumps))
                      .with_label("bump#" + std::to_string(k)));
  }
  return out;
}

}  // namespace isosym
