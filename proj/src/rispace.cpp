#include "isosym/rispace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isosym/error.hpp"
#include "isosym/quadrature.hpp"
#include "isosym/rearrange.hpp"
#include "isosym/search.hpp"

namespace isosym {

namespace {

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(15);
  os << x;
  return os.str();
}

void check_exponent(double x, const char* what, bool allow_below_one) {
  if (!(x > 0.0) || std::isnan(x) || (!allow_below_one && x < 1.0)) {
    throw DomainError(std::string("space exponent ") + what + " out of range: " + fmt(x));
  }
}

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

// sup over (0,1) of h, scanning mesh points and left limits at breaks, with
// golden refinement and a growth test below the mesh floor.
double sup_on_mesh(const RealFn& h, const GradedGrid& grid, std::span<const double> breaks) {
  const Mesh mesh(grid, breaks);
  const auto pts = mesh.points();
  std::vector<double> xs(pts.begin() + 1, pts.end() - 1);
  auto best = grid_sup(h, xs, true);
  double value = best.value;
  for (double b : breaks) {
    if (b > 0.0 && b < 1.0) value = std::max(value, h(b * (1.0 - 1e-14)));
  }
  const double t0 = mesh.floor();
  const double h0 = h(t0), h1 = h(t0 / 2.0), h2 = h(t0 / 4.0);
  if (std::isinf(h1) || std::isinf(h2)) return HUGE_VAL;
  if (h1 > h0 * (1.0 + 1e-9) && h2 > h1 * (1.0 + 1e-9)) return HUGE_VAL;
  return std::max(value, h0);
}

// (integral of (w f)^q dt/t)^(1/q), or sup w f when q is infinite.
double weighted_power_norm(const QuantileProfile& f, const RealFn& w, double q, const GradedGrid& grid) {
  if (std::isinf(q)) {
    const RealFn h = [&](double t) {
      const double v = f(t);
      return v == 0.0 ? 0.0 : w(t) * v;
    };
    return sup_on_mesh(h, grid, f.breaks());
  }
  const RealFn g = [&](double t) {
    const double v = f(t);
    if (v == 0.0) return 0.0;
    return std::pow(w(t) * v, q) / t;
  };
  const double integral = integrate_unit(g, grid, f.breaks());
  if (std::isnan(integral)) return integral;
  return std::pow(integral, 1.0 / q);
}

double stieltjes_norm(const QuantileProfile& f, const Profile& phi, const GradedGrid& grid) {
  try {
    if (phi.derivative) {
      const double atom = std::max(0.0, phi.limit_at_zero());
      const RealFn g = [&](double t) {
        const double v = f(t);
        return v == 0.0 ? 0.0 : v * phi.derivative(t);
      };
      std::vector<double> breaks(f.breaks().begin(), f.breaks().end());
      breaks.insert(breaks.end(), phi.breaks.begin(), phi.breaks.end());
      double value = integrate_unit(g, grid, breaks);
      if (atom > 0.0) value += atom * f.profile.limit_at_zero();
      return value;
    }
    std::vector<double> xs{0.0}, ys{0.0};
    for (double x : grid.nodes()) {
      xs.push_back(x);
      ys.push_back(phi(x));
    }
    xs.push_back(1.0);
    ys.push_back(phi(1.0));
    const Profile hull = concave_majorant(xs, ys);
    std::vector<double> breaks(f.breaks().begin(), f.breaks().end());
    breaks.insert(breaks.end(), hull.breaks.begin(), hull.breaks.end());
    const Antiderivative F(f.profile.fn, grid, breaks, 0.0);
    std::vector<double> vertices{0.0};
    vertices.insert(vertices.end(), hull.breaks.begin(), hull.breaks.end());
    vertices.push_back(1.0);
    double value = 0.0;
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
      const double a = vertices[k], b = vertices[k + 1];
      const double slope = (hull(b) - hull(a)) / (b - a);
      if (slope != 0.0) value += slope * (F(b) - F(a));
    }
    return value;
  } catch (const IntegrabilityError&) {
    return HUGE_VAL;
  }
}

}  // namespace

RISpace RISpace::lp(double p) {
  check_exponent(p, "p", false);
  RISpace s;
  s.kind_ = SpaceKind::Lp;
  s.p_ = p;
  s.q_ = p;
  return s;
}

RISpace RISpace::lorentz(double p, double q) {
  check_exponent(p, "p", true);
  check_exponent(q, "q", true);
  RISpace s;
  s.kind_ = SpaceKind::Lorentz;
  s.p_ = p;
  s.q_ = q;
  return s;
}

RISpace RISpace::lorentz_zygmund(double p, double q, double a) {
  check_exponent(p, "p", true);
  check_exponent(q, "q", true);
  if (!std::isfinite(a)) throw DomainError("Lorentz-Zygmund log exponent must be finite");
  RISpace s;
  s.kind_ = SpaceKind::LorentzZygmund;
  s.p_ = p;
  s.q_ = q;
  s.a_ = a;
  return s;
}

RISpace RISpace::weighted(const RISpace& base, Profile weight) {
  RISpace s;
  s.kind_ = SpaceKind::Weighted;
  s.base_ = std::make_shared<const RISpace>(base);
  s.weight_ = std::move(weight);
  s.weight_label_ = "w";
  return s;
}

RISpace RISpace::marcinkiewicz(Profile phi) {
  RISpace s;
  s.kind_ = SpaceKind::Marcinkiewicz;
  s.weight_ = std::move(phi);
  s.weight_label_ = "phi";
  return s;
}

RISpace RISpace::lambda(Profile phi) {
  RISpace s;
  s.kind_ = SpaceKind::Lambda;
  s.weight_ = std::move(phi);
  s.weight_label_ = "phi";
  return s;
}

RISpace with_weight_label(RISpace space, std::string label) {
  space.weight_label_ = std::move(label);
  return space;
}

std::string RISpace::name() const {
  switch (kind_) {
    case SpaceKind::Lp:
      return "lp:" + fmt(p_);
    case SpaceKind::Lorentz:
      return "lorentz:" + fmt(p_) + "," + fmt(q_);
    case SpaceKind::LorentzZygmund:
      return "lz:" + fmt(p_) + "," + fmt(q_) + "," + fmt(a_);
    case SpaceKind::Weighted:
      return base_->name() + "(" + weight_label_ + ")";
    case SpaceKind::Marcinkiewicz:
      return "M(" + weight_label_ + ")";
    case SpaceKind::Lambda:
      return "Lambda(" + weight_label_ + ")";
  }
  return "";
}

double quasinorm(const RISpace& X, const QuantileProfile& f, const GradedGrid& grid) {
  if (f.kind != ProfileKind::Nonincreasing) {
    throw KindError("quasinorm needs a decreasing rearrangement, got a signed profile");
  }
  switch (X.kind()) {
    case SpaceKind::Lp: {
      if (std::isinf(X.p())) return std::max(0.0, f.profile.limit_at_zero());
      const double p = X.p();
      const RealFn g = [&](double t) {
        const double v = f(t);
        return v == 0.0 ? 0.0 : std::pow(v, p);
      };
      return std::pow(integrate_unit(g, grid, f.breaks()), 1.0 / p);
    }
    case SpaceKind::Lorentz: {
      if (std::isinf(X.p()) && std::isinf(X.q())) return std::max(0.0, f.profile.limit_at_zero());
      const double e = inv(X.p());
      return weighted_power_norm(f, [e](double t) { return std::pow(t, e); }, X.q(), grid);
    }
    case SpaceKind::LorentzZygmund: {
      const double e = inv(X.p());
      const double a = X.a();
      return weighted_power_norm(
          f, [e, a](double t) { return std::pow(t, e) * std::pow(1.0 + std::log(1.0 / t), a); }, X.q(),
          grid);
    }
    case SpaceKind::Weighted: {
      const Profile& w = X.weight();
      Profile g;
      g.fn = [&f, &w](double t) {
        const double v = f(t);
        return v == 0.0 ? 0.0 : v * w(t);
      };
      g.breaks.assign(f.breaks().begin(), f.breaks().end());
      g.breaks.insert(g.breaks.end(), w.breaks.begin(), w.breaks.end());
      return norm_of_function(X.base(), g, grid);
    }
    case SpaceKind::Marcinkiewicz: {
      const Profile& phi = X.weight();
      const RealFn h = [&](double t) {
        const double v = f(t);
        return v == 0.0 ? 0.0 : v * phi(t);
      };
      std::vector<double> breaks(f.breaks().begin(), f.breaks().end());
      breaks.insert(breaks.end(), phi.breaks.begin(), phi.breaks.end());
      return sup_on_mesh(h, grid, breaks);
    }
    case SpaceKind::Lambda:
      return stieltjes_norm(f, X.weight(), grid);
  }
  return 0.0;
}

double norm_of_function(const RISpace& X, const Profile& g, const GradedGrid& grid) {
  const bool lebesgue = X.kind() == SpaceKind::Lp ||
                        (X.kind() == SpaceKind::Lorentz && X.p() == X.q() && std::isfinite(X.p()));
  if (lebesgue && std::isfinite(X.p())) {
    const double p = X.p();
    const RealFn h = [&](double t) {
      const double v = std::abs(g(t));
      return v == 0.0 ? 0.0 : std::pow(v, p);
    };
    return std::pow(integrate_unit(h, grid, g.breaks), 1.0 / p);
  }
  Profile a;
  a.fn = [&g](double t) { return std::abs(g(t)); };
  a.breaks = g.breaks;
  const auto star = decreasing_rearrangement(TransferProfile::from(std::move(a)), grid);
  return quasinorm(X, star, grid);
}

double fundamental(const RISpace& X, double t, const GradedGrid& grid) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("fundamental: t must lie in (0,1]");
  if (X.kind() == SpaceKind::Lp) return std::isfinite(X.p()) ? std::pow(t, 1.0 / X.p()) : 1.0;
  if (X.kind() == SpaceKind::Lorentz && std::isfinite(X.p())) {
    const double base = std::pow(t, 1.0 / X.p());
    return std::isfinite(X.q()) ? std::pow(X.p() / X.q(), 1.0 / X.q()) * base : base;
  }
  return quasinorm(X, QuantileProfile{Profile::indicator(0.0, t), ProfileKind::Nonincreasing}, grid);
}

QuantileProfile dilation(const QuantileProfile& f, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("dilation: s must be positive");
  Profile out;
  out.fn = [fn = f.profile.fn, s](double t) { return t < s ? fn(t / s) : 0.0; };
  if (f.profile.derivative) {
    out.derivative = [d = f.profile.derivative, s](double t) { return t < s ? d(t / s) / s : 0.0; };
  }
  for (double b : f.profile.breaks) {
    const double x = s * b;
    if (x > 0.0 && x < 1.0) out.breaks.push_back(x);
  }
  if (s < 1.0) out.breaks.push_back(s);
  out.left_limit = f.profile.left_limit;
  if (s < 1.0) out.right_limit = 0.0;
  else if (s == 1.0) out.right_limit = f.profile.right_limit;
  return {std::move(out), f.kind};
}

namespace {

QuantileProfile boyd_probe(double a, double b, double delta) {
  const auto g = [a, b](double t) { return std::pow(t, -a) * std::pow(1.0 + std::log(1.0 / t), b); };
  Profile p;
  p.fn = [g, delta](double t) { return g(std::max(t, delta)); };
  p.breaks = {delta};
  p.left_limit = g(delta);
  p.right_limit = 1.0;
  return {std::move(p), ProfileKind::Nonincreasing};
}

struct DilationNorms {
  std::vector<double> up;    // s = 2, 4, 8, 16
  std::vector<double> down;  // s = 1/2, ..., 1/16
};

DilationNorms dilation_norms(const RISpace& X, int K) {
  const GradedGrid& grid = grid_of_size(1024);
  const double delta = std::ldexp(1.0, -30);
  std::vector<double> as{0.0};
  for (int j = 1; j <= K; ++j) as.push_back(static_cast<double>(j) / (K + 1));
  for (int j = 1; j <= K / 2; ++j) as.push_back(1.0 - std::ldexp(1.0, -(j + 3)));
  std::vector<std::pair<double, double>> probes;
  for (double a : as) {
    for (int b = -2; b <= 2; ++b) {
      if (b < 0 && a + b < 0.0) continue;
      probes.emplace_back(a, static_cast<double>(b));
    }
  }
  const std::vector<double> scales{2.0, 4.0, 8.0, 16.0, 0.5, 0.25, 0.125, 0.0625};
  std::vector<double> h(scales.size() * probes.size(), 0.0);
  kernels::for_each_index(probes.size(), [&](std::size_t i) {
    const auto f = boyd_probe(probes[i].first, probes[i].second, delta);
    const double base = quasinorm(X, f, grid);
    for (std::size_t k = 0; k < scales.size(); ++k) {
      const double v = quasinorm(X, dilation(f, scales[k]), grid);
      h[k * probes.size() + i] = (base > 0.0 && std::isfinite(base)) ? v / base : 0.0;
    }
  });
  DilationNorms out;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    double m = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) m = std::max(m, h[k * probes.size() + i]);
    (k < 4 ? out.up : out.down).push_back(m);
  }
  return out;
}

}  // namespace

BoydIndices boyd(const RISpace& X, BoydMode mode) {
  if (mode == BoydMode::Analytic) {
    switch (X.kind()) {
      case SpaceKind::Lp:
      case SpaceKind::Lorentz:
      case SpaceKind::LorentzZygmund:
        return {inv(X.p()), inv(X.p())};
      default:
        throw DomainError("no analytic Boyd indices for " + X.name());
    }
  }
  const auto coarse = dilation_norms(X, 8);
  const auto fine = dilation_norms(X, 16);
  auto drift = [](const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(b[i] - a[i]) / std::max(b[i], 1e-300));
    return d;
  };
  if (drift(coarse.up, fine.up) > 0.05 || drift(coarse.down, fine.down) > 0.05) {
    throw ConvergenceError("Boyd index estimate did not stabilize for " + X.name());
  }
  double upper = HUGE_VAL, lower = -HUGE_VAL;
  double s = 2.0;
  for (double h : fine.up) {
    upper = std::min(upper, std::log(h) / std::log(s));
    s *= 2.0;
  }
  s = 0.5;
  for (double h : fine.down) {
    lower = std::max(lower, std::log(h) / std::log(s));
    s /= 2.0;
  }
  return {lower, upper};
}

Profile concave_majorant(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.empty() || xs.size() != ys.size()) throw DomainError("concave_majorant: size mismatch");
  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!(ys[i] >= 0.0)) throw DomainError("concave_majorant: values must be nonnegative");
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> hx, hy;
  for (std::size_t k : order) {
    const double x = xs[k], y = ys[k];
    if (!hx.empty() && x == hx.back()) {
      if (y <= hy.back()) continue;
      hx.pop_back();
      hy.pop_back();
    }
    while (hx.size() >= 2) {
      const std::size_t n = hx.size();
      // drop the middle vertex when it lies on or below the chord
      const double cross = (hx[n - 1] - hx[n - 2]) * (y - hy[n - 2]) - (hy[n - 1] - hy[n - 2]) * (x - hx[n - 2]);
      if (cross >= 0.0) {
        hx.pop_back();
        hy.pop_back();
      } else {
        break;
      }
    }
    hx.push_back(x);
    hy.push_back(y);
  }
  return Profile::linear_interpolant(std::move(hx), std::move(hy));
}

}  // namespace isosym
