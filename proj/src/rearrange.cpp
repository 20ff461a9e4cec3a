#include "isosym/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "isosym/error.hpp"
#include "isosym/quadrature.hpp"

namespace isosym {

namespace {

QuantileProfile sorted_steps(std::vector<double> values, std::vector<double> weights,
                             ProfileKind kind) {
  if (values.empty()) throw EmptyInputError("rearrangement of an empty sample");
  const std::size_t n = values.size();
  if (weights.empty()) weights.assign(n, 1.0 / static_cast<double>(n));
  if (weights.size() != n) throw DomainError("sample weights and values differ in length");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("sample weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("sample weights must sum to 1");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  std::vector<double> cuts{0.0};
  std::vector<double> levels;
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    acc += weights[i];
    if (weights[i] == 0.0) continue;
    if (!levels.empty() && levels.back() == values[i]) {
      cuts.back() = acc;
    } else {
      levels.push_back(values[i]);
      cuts.push_back(acc);
    }
  }
  if (levels.empty()) throw EmptyInputError("rearrangement: all weights are zero");
  cuts.back() = 1.0;
  return QuantileProfile{Profile::steps(std::move(cuts), std::move(levels)), kind};
}

Profile reflect(const Profile& p) {
  Profile r;
  r.fn = [fn = p.fn](double t) { return fn(1.0 - t); };
  if (p.derivative) r.derivative = [d = p.derivative](double t) { return -d(1.0 - t); };
  for (double b : p.breaks) r.breaks.push_back(1.0 - b);
  std::sort(r.breaks.begin(), r.breaks.end());
  r.left_limit = p.right_limit;
  r.right_limit = p.left_limit;
  return r;
}

Profile negate(const Profile& p) { return p.scaled(-1.0); }

Profile absolute(const Profile& p) {
  Profile r;
  r.fn = [fn = p.fn](double t) { return std::abs(fn(t)); };
  r.breaks = p.breaks;
  return r;
}

// Numeric rearrangement: the exact decreasing rearrangement of the
// piecewise-linear interpolant through the Gauss samples of g.
//
// The distribution function m(y) = |{g > y}| of a piecewise-linear function is
// itself piecewise linear in y, with kinks at the sample values. A sweep over
// the sorted sample values accumulates m; segments whose value range is lost
// in rounding count as flat, and flat pieces become plateaus of the result.
Profile sorted_interpolant(const Profile& g, const GradedGrid& grid) {
  // Resolve the end cells well below the grid floor: their samples become
  // the top of the rearrangement. Near 1 the grading stops where Gauss points
  // would round to 1.
  std::vector<double> breaks = g.breaks;
  breaks.push_back(std::ldexp(grid.floor(), -12));
  breaks.push_back(1.0 - std::ldexp(grid.floor(), -4));
  const Mesh mesh(grid, breaks);
  const auto pts = mesh.points();
  const auto s = kernels::gauss_samples(g.fn, pts, 0, mesh.cells());
  if (std::is_sorted(s.values.begin(), s.values.end(), std::greater<>())) return g;

  const std::size_t n = s.values.size();
  double scale = 0.0;
  for (double v : s.values) scale = std::max(scale, std::abs(v));
  const double flat_tol = 1e-14 * scale;

  // Segments join Gauss points within each cell; the end pieces of a cell
  // extend its first and last segments, so jumps at breaks are not bridged.
  struct Segment {
    double hi, lo, length;
  };
  auto segment = [](double a, double b, double length) {
    return Segment{std::max(a, b), std::min(a, b), length};
  };
  constexpr std::size_t q = GaussRule::kPoints;
  std::vector<Segment> segs;
  segs.reserve(n + 2 * mesh.cells());
  for (std::size_t c = 0; c < mesh.cells(); ++c) {
    const double* x = s.abscissae.data() + c * q;
    const double* v = s.values.data() + c * q;
    // Abscissae can coincide in cells squeezed against 1.
    auto slope = [](double x0, double x1, double v0, double v1) {
      const double k = (v1 - v0) / (x1 - x0);
      return std::isfinite(k) ? k : 0.0;
    };
    const double left_slope = slope(x[0], x[1], v[0], v[1]);
    const double right_slope = slope(x[q - 2], x[q - 1], v[q - 2], v[q - 1]);
    segs.push_back(segment(v[0] - left_slope * (x[0] - pts[c]), v[0], x[0] - pts[c]));
    for (std::size_t i = 0; i + 1 < q; ++i) segs.push_back(segment(v[i], v[i + 1], x[i + 1] - x[i]));
    segs.push_back(segment(v[q - 1], v[q - 1] + right_slope * (pts[c + 1] - x[q - 1]), pts[c + 1] - x[q - 1]));
  }

  // Events at each segment's top (entry) and bottom (exit), swept downward.
  std::vector<double> levels;
  levels.reserve(2 * segs.size());
  for (auto& sg : segs) {
    if (sg.hi - sg.lo <= flat_tol) sg.lo = sg.hi;
    levels.push_back(sg.hi);
    levels.push_back(sg.lo);
  }
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const std::size_t L = levels.size();
  auto index_of = [&](double y) {
    return static_cast<std::size_t>(
        std::lower_bound(levels.begin(), levels.end(), y, std::greater<>()) - levels.begin());
  };
  // slope[j]: d|{g > y}|/d(-y) on (levels[j+1], levels[j]); plateau[j]: flat
  // measure at levels[j].
  std::vector<double> slope_in(L, 0.0), slope_out(L, 0.0), plateau(L, 0.0);
  for (const auto& sg : segs) {
    if (sg.length <= 0.0) continue;
    if (sg.hi == sg.lo) {
      plateau[index_of(sg.hi)] += sg.length;
    } else {
      const double k = sg.length / (sg.hi - sg.lo);
      slope_in[index_of(sg.hi)] += k;
      slope_out[index_of(sg.lo)] += k;
    }
  }

  std::vector<double> xs, ys;
  xs.reserve(2 * L);
  ys.reserve(2 * L);
  long double m = 0.0L, slope = 0.0L;
  for (std::size_t j = 0; j < L; ++j) {
    if (j > 0) m += slope * static_cast<long double>(levels[j - 1] - levels[j]);
    slope -= slope_out[j];
    const double above = static_cast<double>(m);
    xs.push_back(above);
    ys.push_back(levels[j]);
    if (plateau[j] > 0.0) {
      m += plateau[j];
      xs.push_back(static_cast<double>(m));
      ys.push_back(levels[j]);
    }
    slope += slope_in[j];
  }
  // Rounding can leave the running measure slightly off 1 or non-monotone.
  const double total = xs.back();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = std::min(1.0, xs[i] / total);
    if (i > 0) xs[i] = std::max(xs[i], xs[i - 1]);
  }
  return Profile::linear_interpolant(std::move(xs), std::move(ys));
}

}  // namespace

QuantileProfile decreasing_rearrangement(const WeightedSample& s) {
  std::vector<double> a(s.values.size());
  std::transform(s.values.begin(), s.values.end(), a.begin(), [](double v) { return std::abs(v); });
  return sorted_steps(std::move(a), s.weights, ProfileKind::Nonincreasing);
}

QuantileProfile signed_rearrangement(const WeightedSample& s) {
  return sorted_steps(s.values, s.weights, ProfileKind::Signed);
}

QuantileProfile signed_rearrangement(const TransferProfile& F, const GradedGrid& grid) {
  switch (F.monotone) {
    case Monotonicity::Nonincreasing:
      return {F.value, ProfileKind::Signed};
    case Monotonicity::Nondecreasing:
      return {reflect(F.value), ProfileKind::Signed};
    case Monotonicity::None:
      break;
  }
  return {sorted_interpolant(F.value, grid), ProfileKind::Signed};
}

QuantileProfile decreasing_rearrangement(const TransferProfile& F, const GradedGrid& grid) {
  const double lo = F.value.limit_at_zero();
  const double hi = F.value.limit_at_one();
  if (F.monotone == Monotonicity::Nonincreasing) {
    if (hi >= 0.0) return {F.value, ProfileKind::Nonincreasing};
    if (lo <= 0.0) return {reflect(negate(F.value)), ProfileKind::Nonincreasing};
  }
  if (F.monotone == Monotonicity::Nondecreasing) {
    if (lo >= 0.0) return {reflect(F.value), ProfileKind::Nonincreasing};
    if (hi <= 0.0) return {negate(F.value), ProfileKind::Nonincreasing};
  }
  return {sorted_interpolant(absolute(F.value), grid), ProfileKind::Nonincreasing};
}

QuantileProfile maximal(const QuantileProfile& p, const GradedGrid& grid) {
  if (p.kind != ProfileKind::Nonincreasing) {
    throw KindError("maximal: rearrange |f| before taking the maximal function");
  }
  auto prim = std::make_shared<Antiderivative>(p.profile.fn, grid, p.profile.breaks, 0.0);
  if (!std::isfinite(prim->head())) {
    throw IntegrabilityError("maximal: the profile is not integrable near 0");
  }
  const double total = (*prim)(1.0);
  Profile out;
  out.fn = [prim, total](double t) {
    if (t >= 1.0) return total;
    if (t <= 0.0) throw DomainError("maximal: t must be positive");
    return (*prim)(t) / t;
  };
  out.breaks = p.profile.breaks;
  out.left_limit = p.profile.limit_at_zero();
  out.right_limit = total;
  out.derivative = [prim, fn = p.profile.fn](double t) { return (fn(t) - (*prim)(t) / t) / t; };
  return {std::move(out), ProfileKind::Nonincreasing};
}

double median(const QuantileProfile& p) { return p(0.5); }

TransferProfile truncate(const TransferProfile& F, double t1, double t2) {
  if (!(t1 < t2)) throw DomainError("truncate: need t1 < t2");
  Profile v;
  const double width = t2 - t1;
  v.fn = [fn = F.value.fn, t1, width](double t) { return std::min(width, std::max(0.0, fn(t) - t1)); };
  v.derivative = [F, t1, t2](double t) {
    const double x = F(t);
    return (x > t1 && x < t2) ? F.slope(t) : 0.0;
  };
  v.breaks = F.value.breaks;
  // Level crossings of t1 and t2 become breakpoints.
  const auto nodes = default_grid().nodes();
  for (double level : {t1, t2}) {
    double prev_t = nodes.front();
    double prev = F(prev_t) - level;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      const double cur = F(nodes[i]) - level;
      if ((prev < 0.0) != (cur < 0.0)) {
        double a = prev_t, b = nodes[i];
        const bool a_neg = prev < 0.0;
        for (int it = 0; it < 200 && b - a > 4e-16 * b; ++it) {
          const double m = 0.5 * (a + b);
          if ((F(m) - level < 0.0) == a_neg) a = m;
          else b = m;
        }
        v.breaks.push_back(0.5 * (a + b));
      }
      prev_t = nodes[i];
      prev = cur;
    }
  }
  std::sort(v.breaks.begin(), v.breaks.end());
  auto clip = [t1, width](double x) { return std::min(width, std::max(0.0, x - t1)); };
  v.left_limit = clip(F.value.limit_at_zero());
  v.right_limit = clip(F.value.limit_at_one());
  return {std::move(v), F.monotone};
}

}  // namespace isosym
