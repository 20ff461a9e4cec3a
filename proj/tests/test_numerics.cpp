#include <doctest.h>

#include <cmath>
#include <numeric>

#include "generators.hpp"
#include "isosym/error.hpp"
#include "isosym/grid.hpp"
#include "isosym/kernels.hpp"
#include "isosym/quadrature.hpp"
#include "isosym/search.hpp"

using namespace isosym;

TEST_SUITE("numerics") {
  TEST_CASE("graded grid layout") {
    const GradedGrid g(4096);
    CHECK(g.per_octave() == 64);
    CHECK(g.nodes().size() == 4097);
    CHECK(g.floor() == std::ldexp(1.0, -33));
    CHECK(g.left_nodes().back() == 0.5);
    CHECK(std::is_sorted(g.nodes().begin(), g.nodes().end()));
    for (std::size_t i = 0; i < g.nodes().size(); ++i) {
      CHECK(g.nodes()[i] == doctest::Approx(1.0 - g.nodes()[g.nodes().size() - 1 - i]).epsilon(1e-15));
    }
    CHECK_THROWS_AS(GradedGrid(100), DomainError);
    CHECK_THROWS_AS(GradedGrid(32), DomainError);
    CHECK(&grid_of_size(1024) == &grid_of_size(1024));
  }

  TEST_CASE("mesh merges breaks and extends below the floor") {
    const auto& g = grid_of_size(256);
    const std::vector<double> breaks{0.3, 1e-14};
    const Mesh m(g, breaks);
    const auto pts = m.points();
    CHECK(pts.front() == 0.0);
    CHECK(pts.back() == 1.0);
    CHECK(std::find(pts.begin(), pts.end(), 0.3) != pts.end());
    CHECK(m.floor() < 1e-14);
    CHECK(m.locate(0.3) == static_cast<std::size_t>(std::find(pts.begin(), pts.end(), 0.3) - pts.begin()));
  }

  TEST_CASE("Gauss-Legendre rule matches the Legendre roots") {
    // numpy.polynomial.legendre.leggauss(16), mapped to [0,1]
    const auto& r = gauss16();
    CHECK(r.nodes[0] == doctest::Approx(0.5 * (1.0 - 0.9894009349916499)).epsilon(1e-15));
    CHECK(r.weights[0] == doctest::Approx(0.5 * 0.027152459411754037).epsilon(1e-14));
    CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    // exact for polynomials of degree 31
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 31);
    CHECK(s == doctest::Approx(1.0 / 32.0).epsilon(1e-14));
  }

  TEST_CASE("endpoint singularities") {
    const auto& g = default_grid();
    // mpmath: int_0^1 t^-1/2 ln(1/t) dt = 4
    CHECK(integrate_unit([](double t) { return std::log(1.0 / t) / std::sqrt(t); }, g) ==
          doctest::Approx(4.0).epsilon(1e-9));
    CHECK(integrate_unit([](double t) { return std::pow(t, -0.9); }, g) == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(integrate_unit([](double t) { return std::pow(1.0 - t, -0.5); }, g) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::isinf(integrate_unit([](double t) { return 1.0 / t; }, g)));
    CHECK(head_integral([](double t) { return std::pow(t, 2.0); }, 0.25) ==
          doctest::Approx(std::pow(0.25, 3) / 3).epsilon(1e-13));
    // mpmath: int_1e-3^0.7 e^t / sqrt(t) dt
    CHECK(integrate([](double t) { return std::exp(t) / std::sqrt(t); }, 1e-3, 0.7) ==
          doctest::Approx(2.0982489695637976393).epsilon(1e-12));
    CHECK_THROWS_AS(integrate([](double t) { return t; }, 0.0, 0.5), DomainError);
  }

  TEST_CASE("antiderivative anchors") {
    const auto& g = default_grid();
    const RealFn f = [](double t) { return std::pow(t, -0.5); };
    const Antiderivative a0(f, g, {}, 0.0);
    const Antiderivative a1(f, g, {}, 1.0);
    const Antiderivative ah(f, g, {}, 0.5);
    for (double t : {1e-12, 1e-6, 0.1, 0.5, 0.9, 1.0 - 1e-9}) {
      CHECK(a0(t) == doctest::Approx(2.0 * std::sqrt(t)).epsilon(1e-10));
      CHECK(a1(t) == doctest::Approx(2.0 * std::sqrt(t) - 2.0).epsilon(1e-10));
      CHECK(ah(t) == doctest::Approx(2.0 * std::sqrt(t) - std::sqrt(2.0)).epsilon(1e-10));
    }
    const Antiderivative d(RealFn([](double t) { return 1.0 / t; }), g, {}, 1.0);
    CHECK(!d.finite_at_zero());
    CHECK(d(1e-3) == doctest::Approx(std::log(1e-3)).epsilon(1e-10));
    CHECK_THROWS_AS(d(0.0), IntegrabilityError);
  }

  TEST_CASE("property: quadrature is linear and additive over breaks") {
    gen::Stream s(11);
    const auto& g = grid_of_size(1024);
    for (int trial = 0; trial < 20; ++trial) {
      const double a = s.uniform(-0.9, 2.0), b = s.uniform(-0.9, 2.0), c = s.uniform(-3.0, 3.0);
      const RealFn f = [a](double t) { return std::pow(t, a); };
      const RealFn h = [b](double t) { return std::pow(1.0 - t, b); };
      const RealFn sum = [&](double t) { return f(t) + c * h(t); };
      // The end cells extrapolate a fitted power, which is not linear in the
      // integrand; compare both sides with the exact value instead.
      const double exact = 1.0 / (a + 1.0) + c / (b + 1.0);
      CHECK(integrate_unit(sum, g) == doctest::Approx(exact).epsilon(1e-9));
      CHECK(integrate_unit(f, g) + c * integrate_unit(h, g) == doctest::Approx(exact).epsilon(1e-9));
      CHECK(integrate_unit(f, g) == doctest::Approx(1.0 / (a + 1.0)).epsilon(1e-9));
    }
  }

  TEST_CASE("serial and OpenMP kernels agree bitwise") {
    const auto& g = default_grid();
    const RealFn f = [](double t) { return std::sin(40.0 * t) / std::sqrt(t); };
    const std::vector<double> pts(g.nodes().begin(), g.nodes().end());
    const auto a = kernels::serial::evaluate(f, pts);
    const auto b = kernels::omp::evaluate(f, pts);
    CHECK(a == b);
    const auto ca = kernels::serial::cell_integrals(f, pts, 0, pts.size() - 1);
    const auto cb = kernels::omp::cell_integrals(f, pts, 0, pts.size() - 1);
    CHECK(ca == cb);
    const auto s1 = kernels::gauss_samples(f, pts, 0, pts.size() - 1, Exec::Serial);
    const auto s2 = kernels::gauss_samples(f, pts, 0, pts.size() - 1, Exec::Parallel);
    CHECK(s1.values == s2.values);
    CHECK(std::accumulate(s1.weights.begin(), s1.weights.end(), 0.0) ==
          doctest::Approx(pts.back() - pts.front()).epsilon(1e-12));
  }

  TEST_CASE("for_each_index rethrows the lowest failing index") {
    std::vector<int> hit(100, 0);
    try {
      kernels::for_each_index(
          100,
          [&](std::size_t i) {
            hit[i] = 1;
            if (i == 37 || i == 81) throw DomainError(std::to_string(i));
          },
          Exec::Parallel);
      FAIL("no exception");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()) == "37");
    }
    CHECK(std::accumulate(hit.begin(), hit.end(), 0) == 100);
  }

  TEST_CASE("golden section and grid sup") {
    const auto e = golden_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
    CHECK(e.argument == doctest::Approx(0.3).epsilon(1e-7));
    std::vector<double> xs;
    for (int i = 0; i <= 64; ++i) xs.push_back(i / 64.0);
    const RealFn f = [](double x) { return x * std::exp(-5.0 * x); };
    const auto s = grid_sup(f, xs);
    CHECK(s.value == doctest::Approx(0.2 * std::exp(-1.0)).epsilon(1e-13));
    CHECK(s.value >= f(13.0 / 64.0));
    const auto m = grid_inf([](double x) { return (x - 0.7) * (x - 0.7); }, xs);
    CHECK(m.value == doctest::Approx(0.0).epsilon(1e-12));
    // NaN never wins
    const auto n = grid_sup([](double x) { return x > 0.5 ? std::nan("") : x; }, xs, false);
    CHECK(n.value == 0.5);
  }
}
