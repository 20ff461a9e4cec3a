#pragma once

// Data-parallel kernels. Every kernel has a serial reference implementation
// and an OpenMP implementation; both fill per-index outputs independently, so
// results are bitwise identical regardless of the thread schedule.

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace isosym {

using RealFn = std::function<double(double)>;

enum class Exec { Serial, Parallel };

namespace kernels {

Exec default_exec();
void set_default_exec(Exec exec);

/// Calls body(i) for i in [0, n). Exceptions thrown by body are rethrown
/// (the one from the lowest index wins) after the loop completes.
template <class Body>
void for_each_index(std::size_t n, Body&& body, Exec exec = default_exec()) {
  if (exec == Exec::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::size_t error_index = n;
  std::mutex mu;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (static_cast<std::size_t>(i) < error_index) {
        error_index = static_cast<std::size_t>(i);
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

namespace serial {
std::vector<double> evaluate(const RealFn& f, std::span<const double> xs);
/// 16-point Gauss-Legendre integral of g over each [points[i], points[i+1]]
/// for i in [first, last).
std::vector<double> cell_integrals(const RealFn& g, std::span<const double> points,
                                   std::size_t first, std::size_t last);
}  // namespace serial

namespace omp {
std::vector<double> evaluate(const RealFn& f, std::span<const double> xs);
std::vector<double> cell_integrals(const RealFn& g, std::span<const double> points,
                                   std::size_t first, std::size_t last);
}  // namespace omp

std::vector<double> evaluate(const RealFn& f, std::span<const double> xs,
                             Exec exec = default_exec());
std::vector<double> cell_integrals(const RealFn& g, std::span<const double> points,
                                   std::size_t first, std::size_t last,
                                   Exec exec = default_exec());

/// Gauss-point sampling of g over cells [first, last): returns abscissae and
/// quadrature weights (summing to the covered length) plus g at each point.
struct GaussSamples {
  std::vector<double> abscissae;
  std::vector<double> weights;
  std::vector<double> values;
};
GaussSamples gauss_samples(const RealFn& g, std::span<const double> points, std::size_t first,
                           std::size_t last, Exec exec = default_exec());

int thread_count();

}  // namespace kernels
}  // namespace isosym
