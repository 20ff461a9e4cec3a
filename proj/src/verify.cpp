#include "isosym/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isosym/error.hpp"
#include "isosym/operators.hpp"
#include "isosym/quadrature.hpp"
#include "isosym/rearrange.hpp"

namespace isosym {

namespace {

RatioCertificate make_cert(std::string id, std::string family, const CheckOptions& opt) {
  if (!valid_grid_size(opt.grid_size)) throw DomainError("grid size must be a power of two >= 64");
  if (!(opt.tol_assert > 0.0 && opt.tol_quad > 0.0)) throw DomainError("tolerances must be positive");
  RatioCertificate c;
  c.inequality_id = std::move(id);
  c.family = std::move(family);
  c.n_grid = opt.grid_size;
  c.tol_assert = opt.tol_assert;
  c.tol_quad = opt.tol_quad;
  return c;
}

void describe(RatioCertificate& c, const TestFunction& f) {
  c.params["measure"] = f.measure().base.name();
  c.params["dim"] = static_cast<double>(f.measure().dimension);
}

std::string labelled(const TestFunction& f, const std::string& what) {
  return f.label().empty() ? what : f.label() + " " + what;
}

// Slope of the signed rearrangement f-star as a function of t, with the
// breakpoints it carries. Monotone transfer profiles are their own
// rearrangement up to the reflection t -> 1 - t, which preserves I.
struct SignedSlope {
  RealFn slope;
  std::vector<double> breaks;
};

SignedSlope signed_slope(const TestFunction& f, const GradedGrid& grid) {
  if (f.rep() == TestFunction::Rep::Transfer) {
    const auto& F = f.profile();
    if (F.monotone != Monotonicity::None) {
      return {[F](double t) { return F.slope(t); }, F.value.breaks};
    }
    auto s = f.signed_star(grid);
    const auto S = TransferProfile::from(s.profile);
    return {[S](double t) { return S.slope(t); }, s.profile.breaks};
  }
  // Sampled: piecewise-linear interpolant through the sorted values placed at
  // the midpoints of their mass cells.
  std::vector<double> v = f.values();
  if (v.empty()) throw EmptyInputError("sampled function without values");
  std::sort(v.begin(), v.end(), std::greater<>());
  const double n = static_cast<double>(v.size());
  std::vector<double> xs(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) xs[k] = (static_cast<double>(k) + 0.5) / n;
  auto pl = Profile::linear_interpolant(xs, v);
  return {pl.derivative, pl.breaks};
}

Profile estimator_times(const ConvexEstimator& est, const RealFn& g, std::vector<double> breaks) {
  Profile h;
  h.fn = [est, g](double t) {
    const double d = g(t);
    if (d == 0.0) return 0.0;
    return est(t) * std::abs(d);
  };
  h.breaks = std::move(breaks);
  return h;
}

// Values of a ratio over the grid nodes and t = 1, reduced to the argmax.
void add_sup_instance(RatioCertificate& c, const std::string& prefix, std::span<const double> ts,
                      const std::vector<double>& lhs, const std::vector<double>& rhs) {
  std::size_t best = 0;
  double best_ratio = -1.0;
  std::size_t nan_at = ts.size();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = safe_ratio(lhs[i], rhs[i]);
    if (std::isnan(r)) {
      if (nan_at == ts.size()) nan_at = i;
      continue;
    }
    if (r > best_ratio) {
      best_ratio = r;
      best = i;
    }
  }
  c.add(prefix + "t=" + format_number(ts[best]), lhs[best], rhs[best]);
  if (nan_at != ts.size()) c.add(prefix + "t=" + format_number(ts[nan_at]), lhs[nan_at], rhs[nan_at]);
}

std::vector<double> nodes_and_one(const GradedGrid& grid) {
  std::vector<double> ts(grid.nodes().begin(), grid.nodes().end());
  ts.push_back(1.0);
  return ts;
}

double lower_boyd(const RISpace& X) {
  try {
    return boyd(X, BoydMode::Analytic).lower;
  } catch (const DomainError&) {
  }
  try {
    return boyd(X, BoydMode::Numeric).lower;
  } catch (const ConvergenceError&) {
    return std::nan("");
  }
}

}  // namespace

RatioCertificate check_ledoux(const TestFunction& f, const ConvexEstimator& est, const CheckOptions& opt) {
  auto c = make_cert("ledoux", f.label(), opt);
  describe(c, f);
  c.params["estimator"] = est.name();
  const auto& grid = grid_of_size(opt.grid_size);

  double lhs = 0.0;
  if (f.rep() == TestFunction::Rep::Transfer) {
    const auto s = signed_slope(f, grid);
    const auto h = estimator_times(est, s.slope, s.breaks);
    lhs = integrate_unit(h.fn, grid, h.breaks);
  } else {
    std::vector<double> v = f.values();
    std::sort(v.begin(), v.end(), std::greater<>());
    const double n = static_cast<double>(v.size());
    for (std::size_t k = 1; k < v.size(); ++k) {
      const double drop = v[k - 1] - v[k];
      if (drop > 0.0) lhs += est(static_cast<double>(k) / n) * drop;
    }
  }
  const double rhs = f.integral_gradient(grid);
  if (!std::isfinite(rhs)) throw IntegrabilityError("ledoux: the gradient is not integrable");
  c.add(f.label(), lhs, rhs);
  c.finalize();
  return c;
}

RatioCertificate check_reafun(const TestFunction& f, const ConvexEstimator& est, const CheckOptions& opt) {
  auto c = make_cert("reafun", f.label(), opt);
  describe(c, f);
  c.params["estimator"] = est.name();
  const auto& grid = grid_of_size(opt.grid_size);

  const auto s = signed_slope(f, grid);
  auto h = estimator_times(est, s.slope, s.breaks);
  const auto hstar = decreasing_rearrangement(TransferProfile::from(std::move(h)), grid);
  const auto gstar = f.gradient_star(grid);
  const Antiderivative left(hstar.profile.fn, grid, hstar.profile.breaks, 0.0);
  const Antiderivative right(gstar.profile.fn, grid, gstar.profile.breaks, 0.0);
  if (!left.finite_at_zero() || !right.finite_at_zero()) {
    throw IntegrabilityError("reafun: a cumulative integral diverges at 0");
  }

  const auto ts = nodes_and_one(grid);
  const auto lhs = kernels::evaluate([&left](double t) { return left(t); }, ts);
  const auto rhs = kernels::evaluate([&right](double t) { return right(t); }, ts);
  add_sup_instance(c, labelled(f, ""), ts, lhs, rhs);
  c.finalize();
  return c;
}

RatioCertificate check_bobkov(const TestFunction& f, const ConvexEstimator& est,
                              std::span<const double> s_grid, const CheckOptions& opt) {
  auto c = make_cert("bobkov", f.label(), opt);
  describe(c, f);
  c.params["estimator"] = est.name();
  const auto& grid = grid_of_size(opt.grid_size);

  const auto u = f.recentred();
  const double osc = u.oscillation();
  if (!std::isfinite(osc)) throw OscillationError("bobkov: the function is unbounded");
  const double lhs = u.integral_abs(0.0, grid);
  const double g = u.integral_gradient(grid);
  if (!std::isfinite(g)) throw IntegrabilityError("bobkov: the gradient is not integrable");
  for (double s : s_grid) {
    const double rhs = beta1(est, s) * g + s * osc;
    c.add(labelled(f, "s=" + format_number(s)), lhs, rhs);
  }
  c.finalize();
  return c;
}

RatioCertificate check_halfspace(const ProductMeasure& m, const ConvexEstimator& est,
                                 std::span<const double> r_grid, const CheckOptions& opt) {
  auto c = make_cert("halfspace", "halfspaces x1<r", opt);
  c.params["measure"] = m.base.name();
  c.params["dim"] = static_cast<double>(m.dimension);
  c.params["estimator"] = est.name();
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (double r : r_grid) {
    const auto hs = halfspace(m, r);
    c.add("r=" + format_number(r), est(hs.mass), hs.perimeter);
    if (hs.mass > 0.0 && hs.mass < 1.0) {
      const double exact = safe_ratio(exact_profile(m.base, hs.mass), hs.perimeter);
      lo = std::min(lo, exact);
      hi = std::max(hi, exact);
    }
  }
  if (lo <= hi) {
    c.params["exact_profile_ratio_min"] = lo;
    c.params["exact_profile_ratio_max"] = hi;
  }
  c.finalize();
  return c;
}

RatioCertificate check_poincare(const TestFunction& f, const RISpace& X, const ConvexEstimator& est,
                                const CheckOptions& opt) {
  auto c = make_cert("poincare", f.label(), opt);
  describe(c, f);
  c.params["estimator"] = est.name();
  c.params["space"] = X.name();
  const auto& grid = grid_of_size(opt.grid_size);

  const double lower = lower_boyd(X);
  c.params["boyd_lower"] = lower;
  if (lower > 0.0) {
    c.params["branch"] = std::string("boyd");
  } else {
    const double peso = peso_constant(est, grid);
    c.params["peso"] = peso;
    if (std::isfinite(peso)) {
      c.params["branch"] = std::string("peso");
    } else {
      c.params["branch"] = std::string("none");
      c.flagged = true;
    }
  }

  const auto ustar = f.recentred().star(grid);
  Profile g;
  g.fn = [ustar, est](double t) {
    const double i = est(t);
    return i == 0.0 ? 0.0 : ustar(t) * i / t;
  };
  g.breaks = ustar.profile.breaks;
  const double lhs = norm_of_function(X, g, grid);
  const double rhs = quasinorm(X, f.gradient_star(grid), grid);
  c.add(f.label(), lhs, rhs);
  c.finalize();
  return c;
}

RatioCertificate check_embedding(const RISpace& Y, const RISpace& X, const ConvexEstimator& est,
                                 std::span<const QuantileProfile> profiles,
                                 std::span<const std::string> labels, const CheckOptions& opt) {
  auto c = make_cert("embedding", "profiles", opt);
  c.params["estimator"] = est.name();
  c.params["target"] = Y.name();
  c.params["space"] = X.name();
  const auto& grid = grid_of_size(opt.grid_size);
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto& p = profiles[i];
    if (p.kind != ProfileKind::Nonincreasing) throw KindError("embedding: profiles must be nonincreasing");
    Profile g;
    g.fn = [p, est](double t) {
      const double v = p(t);
      return v == 0.0 ? 0.0 : v * est(t) / t;
    };
    g.breaks = p.profile.breaks;
    const double lhs = quasinorm(Y, p, grid);
    const double rhs = norm_of_function(X, g, grid);
    c.add(i < labels.size() ? labels[i] : "profile " + std::to_string(i), lhs, rhs);
  }
  c.finalize();
  return c;
}

RatioCertificate check_nash(const TestFunction& f, const RISpace& X, const NashVariant& variant,
                            const CheckOptions& opt) {
  auto c = make_cert("nash", f.label(), opt);
  describe(c, f);
  c.params["space"] = X.name();
  c.params["r_refine"] = static_cast<double>(opt.r_refine);
  const auto& grid = grid_of_size(opt.grid_size);

  const auto g = f.positive_part();
  const auto gstar = g.star(grid);
  const double lhs = quasinorm(X, gstar, grid);
  const double grad = quasinorm(X, g.gradient_star(grid), grid);

  double rhs = 0.0;
  if (const auto* v = std::get_if<CauchyNash>(&variant)) {
    c.params["variant"] = std::string("cauchy");
    c.params["alpha"] = v->alpha;
    c.params["q"] = v->q;
    if (!(v->alpha > 0.0) || !(v->q > 0.0)) throw DomainError("nash: need alpha > 0 and q > 0");
    const double lower = lower_boyd(X);
    c.params["boyd_lower"] = lower;
    if (!(1.0 / v->q < lower)) c.flagged = true;
    const double weak = quasinorm(RISpace::lorentz(v->q, HUGE_VAL), gstar, grid);
    const int refine = std::max(1, opt.r_refine);
    const int steps = 80 * refine;
    rhs = HUGE_VAL;
    for (int j = 0; j <= steps; ++j) {
      const double e = static_cast<double>(j) / (4.0 * refine);
      const double r = std::exp2(e);
      const double phi = fundamental(X, std::exp2(-v->alpha * e), grid);
      const double tail = weak == 0.0 ? 0.0 : weak * phi * std::exp2(v->alpha * e / v->q);
      const double head = grad == 0.0 ? 0.0 : r * grad;
      rhs = std::min(rhs, head + tail);
    }
  } else {
    const auto& s = std::get<SubExpNash>(variant);
    c.params["variant"] = std::string("subexp");
    c.params["p"] = s.p;
    c.params["beta"] = s.beta;
    if (!(s.p > 0.0 && s.p < 1.0) || !(s.beta > 0.0)) throw DomainError("nash: need 0 < p < 1 and beta > 0");
    const double e = s.beta * (1.0 / s.p - 1.0);
    Profile w;
    w.fn = [gstar, e](double t) {
      const double v = gstar(t);
      if (v == 0.0) return 0.0;
      return v * std::pow(std::log(1.0 / t), e);
    };
    w.breaks = gstar.profile.breaks;
    const double weighted = norm_of_function(X, w, grid);
    if (grad == 0.0 || weighted == 0.0) {
      rhs = 0.0;
    } else {
      rhs = std::pow(grad, s.beta / (s.beta + 1.0)) * std::pow(weighted, 1.0 / (s.beta + 1.0));
    }
  }
  c.add(f.label(), lhs, rhs);
  c.finalize();
  return c;
}

RatioCertificate check_concave_gaussian(const TestFunction& f, const CheckOptions& opt) {
  if (f.measure().base.family() != MeasureFamily::Gaussian) {
    throw DomainError("concave gaussian comparison needs the Gaussian measure");
  }
  auto c = make_cert("concave-gaussian", f.label(), opt);
  describe(c, f);
  const auto& grid = grid_of_size(opt.grid_size);
  const auto base = f.measure().base;

  const auto fs = f.star(grid);
  const auto fss = maximal(fs, grid);
  const auto gss = maximal(f.gradient_star(grid), grid);
  const auto ts = grid.nodes();
  const auto lhs = kernels::evaluate(
      [&](double t) {
        const double d = fss(t) - fs(t);
        return d <= 0.0 ? 0.0 : d * exact_profile(base, t) / t;
      },
      ts);
  const auto rhs = kernels::evaluate([&](double t) { return gss(t); }, ts);
  add_sup_instance(c, labelled(f, ""), ts, lhs, rhs);
  c.finalize();
  return c;
}

RatioCertificate check_family(std::span<const TestFunction> family,
                              const std::function<RatioCertificate(const TestFunction&)>& check,
                              Exec exec) {
  if (family.empty()) throw EmptyInputError("check_family: empty family");
  std::vector<RatioCertificate> certs(family.size());
  kernels::for_each_index(family.size(), [&](std::size_t i) { certs[i] = check(family[i]); }, exec);
  auto out = merge(certs);
  out.family = family.size() == 1 ? family.front().label()
                                  : "family of " + std::to_string(family.size());
  return out;
}

RISpace sharpness_target(const SharpnessSetup& setup, double delta) {
  if (setup.prop == "5.1") {
    return RISpace::lorentz(setup.p * setup.alpha / (setup.p + setup.alpha) - delta, setup.q);
  }
  if (setup.prop == "5.2") {
    return RISpace::lorentz_zygmund(setup.p, setup.q, 1.0 - 1.0 / setup.alpha - delta);
  }
  throw DomainError("sharpness: unknown proposition '" + setup.prop + "' (expected 5.1 or 5.2)");
}

std::vector<RatioCertificate> sharpness_scan(const SharpnessSetup& setup, double delta,
                                             std::span<const int> ks, const CheckOptions& opt) {
  const RISpace Y = sharpness_target(setup, delta);
  const RISpace X = RISpace::lorentz(setup.p, setup.q);
  EstimatorParams params;
  ConvexEstimator est = setup.prop == "5.1"
                            ? (params.alpha = setup.alpha, make_estimator(EstimatorFamily::CauchyAlpha, params))
                            : (params.p = setup.alpha, make_estimator(EstimatorFamily::SubExpP, params));
  const auto& grid = grid_of_size(opt.grid_size);

  std::vector<RatioCertificate> out(ks.size());
  kernels::for_each_index(ks.size(), [&](std::size_t i) {
    const int k = ks[i];
    const double u = std::exp2(-k);
    const std::string label = "chi(0,2^-" + std::to_string(k) + ")";
    const QuantileProfile f{Profile::indicator(0.0, u), ProfileKind::Nonincreasing};
    RatioCertificate c;
    if (setup.kind == SharpnessKind::IndicatorEmbedding) {
      const std::vector<QuantileProfile> fs{f};
      const std::vector<std::string> labels{label};
      c = check_embedding(Y, X, est, fs, labels, opt);
      c.inequality_id = "sharpness-embedding";
    } else {
      const auto m = setup.prop == "5.1" ? make_cauchy(setup.alpha) : make_subexp(setup.alpha);
      const auto u_fn = extremal(f.profile, make_product(m, 1), grid);
      c = make_cert("sharpness-poincare", label, opt);
      c.params["target"] = Y.name();
      c.params["space"] = X.name();
      c.params["measure"] = m.name();
      c.add(label, quasinorm(Y, u_fn.star(grid), grid), quasinorm(X, f, grid));
      c.finalize();
    }
    c.family = label;
    c.params["prop"] = setup.prop;
    c.params["delta"] = delta;
    c.params["k"] = static_cast<double>(k);
    out[i] = std::move(c);
  });
  return out;
}

double sweep_growth(const std::vector<RatioCertificate>& sweep) {
  if (sweep.empty()) throw EmptyInputError("sweep_growth: empty sweep");
  return safe_ratio(sweep.back().sup_ratio, sweep.front().sup_ratio);
}

double sweep_spread(const std::vector<RatioCertificate>& sweep) {
  if (sweep.empty()) throw EmptyInputError("sweep_spread: empty sweep");
  double lo = HUGE_VAL, hi = 0.0;
  for (const auto& c : sweep) {
    lo = std::min(lo, c.sup_ratio);
    hi = std::max(hi, c.sup_ratio);
  }
  return safe_ratio(hi, lo);
}

}  // namespace isosym
