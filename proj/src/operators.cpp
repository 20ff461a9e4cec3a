#include "isosym/operators.hpp"

#include <cmath>
#include <memory>

#include "isosym/error.hpp"
#include "isosym/quadrature.hpp"
#include "isosym/search.hpp"

namespace isosym {

namespace {

const GradedGrid& search_grid() { return grid_of_size(256); }

RealFn over_estimator(const ConvexEstimator& est, const Profile& f) {
  return [est, fn = f.fn](double s) {
    const double v = fn(s);
    return v == 0.0 ? 0.0 : v / est(s);
  };
}

}  // namespace

OperatorResult hardy(const Profile& f, HardyKind kind, const GradedGrid& grid) {
  OperatorResult r;
  r.grid_size = grid.size();
  if (kind == HardyKind::P) {
    auto prim = std::make_shared<Antiderivative>(f.fn, grid, f.breaks, 0.0);
    if (!std::isfinite(prim->head())) throw IntegrabilityError("P: f is not integrable near 0");
    r.tag = "P";
    r.output.fn = [prim](double t) {
      if (!(t > 0.0)) throw DomainError("P: t must be positive");
      return (*prim)(t) / t;
    };
  } else {
    const RealFn g = [fn = f.fn](double s) {
      const double v = fn(s);
      return v == 0.0 ? 0.0 : v / s;
    };
    auto prim = std::make_shared<Antiderivative>(g, grid, f.breaks, 1.0);
    if (!std::isfinite(prim->tail())) throw IntegrabilityError("Q: f(s)/s is not integrable near 1");
    r.tag = "Q";
    r.output.fn = [prim](double t) { return -(*prim)(t); };
  }
  r.output.breaks = f.breaks;
  return r;
}

OperatorResult q_bar(const ConvexEstimator& est, const Profile& f, const GradedGrid& grid) {
  auto prim = std::make_shared<Antiderivative>(over_estimator(est, f), grid, f.breaks, 0.5);
  OperatorResult r;
  r.tag = "q_bar";
  r.estimator = est.name();
  r.grid_size = grid.size();
  r.output.fn = [prim](double t) { return -(*prim)(t); };
  r.output.derivative = [g = over_estimator(est, f)](double t) { return -g(t); };
  r.output.breaks = f.breaks;
  r.output.right_limit = std::nullopt;
  return r;
}

OperatorResult q_tilde(const ConvexEstimator& est, const Profile& f, const GradedGrid& grid) {
  auto inner = q_bar(est, f, grid);
  OperatorResult r;
  r.tag = "q_tilde";
  r.estimator = est.name();
  r.grid_size = grid.size();
  r.output.fn = [est, q = inner.output.fn](double t) {
    if (!(t > 0.0 && t < 0.5)) return 0.0;
    const double v = q(t);
    return v == 0.0 ? 0.0 : est(t) / t * v;
  };
  r.output.breaks = f.breaks;
  r.output.breaks.push_back(0.5);
  return r;
}

double beta1(const ConvexEstimator& est, double s) {
  if (!(s > 0.0 && s < 0.5)) throw DomainError("beta1: s must lie in (0,1/2)");
  const double width = 0.5 - s;
  const auto left = search_grid().left_nodes();
  std::vector<double> ts;
  ts.reserve(left.size() + 400);
  // Offsets proportional to s reach the maximizer when s is far below the
  // finest offset of the mapped grid.
  const double finest = width * 2.0 * left[1];
  for (int j = -80; s * std::exp2(j / 8.0) < finest; ++j) ts.push_back(s + s * std::exp2(j / 8.0));
  for (double g : left) {
    const double t = s + width * 2.0 * g;
    if (t > s && (ts.empty() || t > ts.back())) ts.push_back(t);
  }
  ts.back() = 0.5;
  const RealFn h = [&est, s](double t) { return (t - s) / est(t); };
  return grid_sup(h, ts, true).value;
}

double recover_estimator(const ConvexEstimator& est, double t) {
  if (!(t > 0.0 && t <= 0.5)) throw DomainError("recover_estimator: t must lie in (0,1/2]");
  const auto nodes = search_grid().nodes();
  std::vector<double> ss;
  ss.reserve(nodes.size());
  for (double g : nodes) ss.push_back(t * g);
  const RealFn h = [&est, t](double s) { return (t - s) / beta1(est, s); };
  return grid_sup(h, ss, true).value;
}

std::vector<double> recover_estimator_sweep(const ConvexEstimator& est, std::span<const double> ts,
                                            Exec exec) {
  std::vector<double> out(ts.size());
  kernels::for_each_index(ts.size(), [&](std::size_t i) { out[i] = recover_estimator(est, ts[i]); }, exec);
  return out;
}

namespace {

// (1/t) int_a^b I(t)/I(s) ds: the scaled form never overflows because I is
// nondecreasing on (0,1/2).
double scaled_tail(const ConvexEstimator& est, double t, double a, double b) {
  const double It = est(t);
  if (!(It > 0.0)) throw DomainError("peso: I(t) underflows at this t");
  const RealFn g = [&est, It](double s) { return It / est(s); };
  return integrate(g, a, b) / t;
}

}  // namespace

double peso_value(const ConvexEstimator& est, double t) {
  if (!(t > 0.0 && t < 0.5)) throw DomainError("peso_value: t must lie in (0,1/2)");
  return scaled_tail(est, t, t, 0.5);
}

double peso_constant(const ConvexEstimator& est, const GradedGrid& grid) {
  const RealFn inv = [&est](double s) { return 1.0 / est(s); };
  const Antiderivative J(inv, grid, {}, 0.5);
  const RealFn v = [&](double t) { return est(t) / t * -J(t); };

  const auto left = grid.left_nodes();
  std::vector<double> ts(left.begin(), left.end() - 1);
  double best = grid_sup(v, ts, true).value;

  // March octaves below the floor: v_k at t_k = floor * 2^-k, carried as
  // v_k = (1/t_k) int_{t_k}^{t_(k-1)} I(t_k)/I + (I(t_k)/t_k)(t_(k-1)/I(t_(k-1))) v_(k-1).
  double t = grid.floor();
  double prev = v(t);
  double prev_step = 0.0;
  int slow = 0;
  for (int k = 1; k <= 2000; ++k) {
    const double tk = t / 2.0;
    const double Ik = est(tk);
    if (!(Ik > 0.0) || !(tk > 1e-290)) {
      if (slow >= 10) return HUGE_VAL;
      break;
    }
    const double vk = scaled_tail(est, tk, tk, t) + (Ik / est(t)) * 2.0 * prev;
    if (!std::isfinite(vk)) return HUGE_VAL;
    best = std::max(best, vk);
    const double step = vk - prev;
    if (std::abs(step) <= 4e-16 * std::abs(vk)) break;
    if (k > 1 && prev_step > 0.0 && step > 0.0) {
      const double rho = step / prev_step;
      if (rho >= 0.999) {
        if (++slow >= 100) return HUGE_VAL;
      } else {
        slow = 0;
        best = std::max(best, vk + step * rho / (1.0 - rho));
      }
    }
    prev = vk;
    prev_step = step;
    t = tk;
  }
  return best;
}

}  // namespace isosym
