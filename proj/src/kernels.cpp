#include "isosym/kernels.hpp"

#include <atomic>

#include "isosym/quadrature.hpp"

namespace isosym::kernels {

namespace {
std::atomic<Exec> g_default{Exec::Parallel};

double cell_integral(const RealFn& g, double a, double b) {
  const auto& rule = gauss16();
  const double h = b - a;
  double sum = 0.0;
  for (std::size_t k = 0; k < GaussRule::kPoints; ++k) {
    sum += rule.weights[k] * g(a + h * rule.nodes[k]);
  }
  return sum * h;
}
}  // namespace

Exec default_exec() { return g_default.load(); }
void set_default_exec(Exec exec) { g_default.store(exec); }

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace serial {

std::vector<double> evaluate(const RealFn& f, std::span<const double> xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
  return out;
}

std::vector<double> cell_integrals(const RealFn& g, std::span<const double> points,
                                   std::size_t first, std::size_t last) {
  std::vector<double> out(last - first);
  for (std::size_t i = first; i < last; ++i) {
    out[i - first] = cell_integral(g, points[i], points[i + 1]);
  }
  return out;
}

}  // namespace serial

namespace omp {

std::vector<double> evaluate(const RealFn& f, std::span<const double> xs) {
  std::vector<double> out(xs.size());
  for_each_index(xs.size(), [&](std::size_t i) { out[i] = f(xs[i]); }, Exec::Parallel);
  return out;
}

std::vector<double> cell_integrals(const RealFn& g, std::span<const double> points,
                                   std::size_t first, std::size_t last) {
  std::vector<double> out(last - first);
  for_each_index(
      last - first,
      [&](std::size_t j) { out[j] = cell_integral(g, points[first + j], points[first + j + 1]); },
      Exec::Parallel);
  return out;
}

}  // namespace omp

std::vector<double> evaluate(const RealFn& f, std::span<const double> xs, Exec exec) {
  return exec == Exec::Serial ? serial::evaluate(f, xs) : omp::evaluate(f, xs);
}

std::vector<double> cell_integrals(const RealFn& g, std::span<const double> points,
                                   std::size_t first, std::size_t last, Exec exec) {
  return exec == Exec::Serial ? serial::cell_integrals(g, points, first, last)
                              : omp::cell_integrals(g, points, first, last);
}

GaussSamples gauss_samples(const RealFn& g, std::span<const double> points, std::size_t first,
                           std::size_t last, Exec exec) {
  const auto& rule = gauss16();
  constexpr std::size_t K = GaussRule::kPoints;
  const std::size_t n = (last - first) * K;
  GaussSamples s;
  s.abscissae.resize(n);
  s.weights.resize(n);
  for (std::size_t i = first; i < last; ++i) {
    const double a = points[i];
    const double h = points[i + 1] - a;
    for (std::size_t k = 0; k < K; ++k) {
      s.abscissae[(i - first) * K + k] = a + h * rule.nodes[k];
      s.weights[(i - first) * K + k] = h * rule.weights[k];
    }
  }
  s.values = evaluate(g, s.abscissae, exec);
  return s;
}

}  // namespace isosym::kernels
