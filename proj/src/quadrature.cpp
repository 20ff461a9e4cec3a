#include "isosym/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "isosym/error.hpp"

namespace isosym {

namespace {

GaussRule build_gauss16() {
  constexpr int n = 16;
  GaussRule rule{};
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n starting from the Chebyshev-like guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Map [-1,1] -> [0,1]; nodes ascending.
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

constexpr int kPiecesPerOctave = 4;

double octave_sum(const RealFn& g, double a, double b) {
  // integral over [a,b] with 0 < a < b, geometric cells refined toward a = 0 side
  double sum = 0.0;
  double hi = b;
  while (hi > a) {
    const double lo = std::max(a, hi / 2.0);
    const double h = (hi - lo) / kPiecesPerOctave;
    for (int j = 0; j < kPiecesPerOctave; ++j) {
      const double x0 = lo + h * j;
      const double x1 = (j + 1 == kPiecesPerOctave) ? hi : lo + h * (j + 1);
      sum += integrate_cell(g, x0, x1);
    }
    hi = lo;
  }
  return sum;
}

double integrate_left(const RealFn& g, double a, double b) { return octave_sum(g, a, b); }

double integrate_right(const RealFn& g, double a, double b) {
  const RealFn mirrored = [&g](double u) { return g(1.0 - u); };
  return octave_sum(mirrored, 1.0 - b, 1.0 - a);
}

// R(s,z) = Gamma(s,z) e^z z^(1-s), which tends to 1 as z grows. The integral
// of C t^lambda ln(1/t)^mu over [0,a] is a g(a) R(mu+1, (lambda+1) ln(1/a)) / (lambda+1).
double log_power_factor(double s, double z) {
  if (s == 1.0) return 1.0;
  if (z > 40.0 + 4.0 * std::abs(s)) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
      const double next = term * (s - k) / z;
      if (std::abs(next) >= std::abs(term)) break;
      term = next;
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  if (s <= 0.0) return z * (log_power_factor(s + 1.0, z) - 1.0) / s;
  return boost::math::tgamma(s, z) * std::exp(z) * std::pow(z, 1.0 - s);
}

}  // namespace

const GaussRule& gauss16() {
  static const GaussRule rule = build_gauss16();
  return rule;
}

double integrate_cell(const RealFn& g, double a, double b) {
  const auto& rule = gauss16();
  const double h = b - a;
  double sum = 0.0;
  for (std::size_t k = 0; k < GaussRule::kPoints; ++k) sum += rule.weights[k] * g(a + h * rule.nodes[k]);
  return sum * h;
}

double head_integral(const RealFn& g, double a) {
  const double v1 = g(a);
  const double v2 = g(a / 2.0);
  if (v1 == 0.0 && v2 == 0.0) return 0.0;
  if (!std::isfinite(v1) || !std::isfinite(v2)) {
    return std::isnan(v1) || std::isnan(v2) ? std::numeric_limits<double>::quiet_NaN()
                                            : std::copysign(HUGE_VAL, std::isfinite(v2) ? v1 : v2);
  }
  if (!(v1 * v2 > 0.0)) return integrate_cell(g, 0.0, a);
  const double lambda = std::log2(v1 / v2);
  if (a < 0.25) {
    // Fit C t^lambda ln(1/t)^mu through a, a/2, a/4.
    const double v3 = g(a / 4.0);
    const double L1 = std::log(1.0 / a), L2 = L1 + M_LN2, L3 = L2 + M_LN2;
    if (std::isfinite(v3) && v2 * v3 > 0.0) {
      const double d1 = std::log(v2 / v1), d2 = std::log(v3 / v2);
      const double e1 = std::log(L2 / L1), e2 = std::log(L3 / L2);
      double mu = (d2 - d1) / (e2 - e1);
      if (std::abs(mu) < 1e-9) mu = 0.0;
      const double lam = -(d1 - mu * e1) / M_LN2;
      if (std::isfinite(mu) && std::abs(mu) <= 8.0) {
        if (lam <= -1.0 + 1e-9) return std::copysign(HUGE_VAL, v1);
        return a * v1 * log_power_factor(mu + 1.0, (lam + 1.0) * L1) / (lam + 1.0);
      }
    }
  }
  if (lambda <= -1.0 + 1e-9) return std::copysign(HUGE_VAL, v1);
  return a * v1 / (lambda + 1.0);
}

double tail_integral(const RealFn& g, double a) {
  const RealFn mirrored = [&g](double u) { return g(1.0 - u); };
  return head_integral(mirrored, a);
}

double integrate(const RealFn& g, double a, double b) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(g, b, a);
  if (!(a > 0.0 && b < 1.0)) throw DomainError("integrate: bounds must lie in (0,1)");
  if (b <= 0.5) return integrate_left(g, a, b);
  if (a >= 0.5) return integrate_right(g, a, b);
  return integrate_left(g, a, 0.5) + integrate_right(g, 0.5, b);
}

double integrate_unit(const RealFn& g, const GradedGrid& grid, std::span<const double> breaks,
                      Exec exec) {
  const Mesh mesh(grid, breaks);
  const auto pts = mesh.points();
  const std::size_t M = mesh.cells();
  const double head = head_integral(g, pts[1]);
  const double tail = tail_integral(g, 1.0 - pts[M - 1]);
  const auto inner = kernels::cell_integrals(g, pts, 1, M - 1, exec);
  double sum = 0.0;
  for (double v : inner) sum += v;
  return head + sum + tail;
}

Antiderivative::Antiderivative(RealFn g, const GradedGrid& grid, std::span<const double> breaks,
                               double anchor, Exec exec)
    : g_(std::move(g)), mesh_(grid, [&] {
        std::vector<double> b(breaks.begin(), breaks.end());
        b.push_back(anchor);
        return b;
      }()),
      anchor_(anchor) {
  if (!(anchor >= 0.0 && anchor <= 1.0)) throw DomainError("antiderivative anchor outside [0,1]");
  const auto pts = mesh_.points();
  const std::size_t M = mesh_.cells();
  auto it = std::lower_bound(pts.begin(), pts.end(), anchor);
  anchor_index_ = static_cast<std::size_t>(it - pts.begin());
  if (anchor_index_ > 0 && (anchor_index_ == pts.size() || anchor - pts[anchor_index_ - 1] < pts[anchor_index_] - anchor)) {
    --anchor_index_;
  }

  std::vector<double> cells(M);
  head_ = head_integral(g_, pts[1]);
  tail_ = tail_integral(g_, 1.0 - pts[M - 1]);
  const auto inner = kernels::cell_integrals(g_, pts, 1, M - 1, exec);
  cells[0] = head_;
  std::copy(inner.begin(), inner.end(), cells.begin() + 1);
  cells[M - 1] = tail_;

  cumulative_.assign(M + 1, 0.0);
  for (std::size_t i = anchor_index_ + 1; i <= M; ++i) cumulative_[i] = cumulative_[i - 1] + cells[i - 1];
  for (std::size_t i = anchor_index_; i-- > 0;) cumulative_[i] = cumulative_[i + 1] - cells[i];
}

bool Antiderivative::finite_at_zero() const { return std::isfinite(cumulative_.front()); }
bool Antiderivative::finite_at_one() const { return std::isfinite(cumulative_.back()); }

double Antiderivative::operator()(double t) const {
  const auto pts = mesh_.points();
  const std::size_t M = mesh_.cells();
  double v;
  if (t <= 0.0) {
    v = cumulative_.front();
  } else if (t >= 1.0) {
    v = cumulative_.back();
  } else {
    const std::size_t i = mesh_.locate(t);
    if (t == pts[i]) {
      v = cumulative_[i];
    } else if (i == 0) {
      v = anchor_index_ == 0 ? head_integral(g_, t) : cumulative_[1] - integrate(g_, t, pts[1]);
    } else if (i == M - 1) {
      v = anchor_index_ == M ? -tail_integral(g_, 1.0 - t)
                             : cumulative_[M - 1] + integrate(g_, pts[M - 1], t);
    } else if (i >= anchor_index_) {
      v = cumulative_[i] + integrate_cell(g_, pts[i], t);
    } else {
      v = cumulative_[i + 1] - integrate_cell(g_, t, pts[i + 1]);
    }
  }
  if (!std::isfinite(v)) {
    throw IntegrabilityError("integral diverges at the endpoint near t = " + std::to_string(t));
  }
  return v;
}

}  // namespace isosym
