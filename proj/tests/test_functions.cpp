#include <doctest.h>

#include <cmath>

#include "isosym/error.hpp"
#include "isosym/functions.hpp"
#include "isosym/measures.hpp"

using namespace isosym;

TEST_SUITE("functions") {
  TEST_CASE("ramp transfer on Cauchy") {
    const auto m = make_product(make_cauchy(1.0), 1);
    const auto u = transfer(TransferProfile::ramp_down(0.5), m);
    CHECK(u.integral_gradient() == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
    CHECK(u.integral_abs() == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(u.oscillation() == doctest::Approx(0.5));
    CHECK(u.median() == doctest::Approx(0.0).epsilon(1e-12));
    const auto star = u.star();
    for (double t : {0.01, 0.2, 0.45}) CHECK(star(t) == doctest::Approx(0.5 - t).epsilon(1e-9));
    const auto g = u.gradient_star();
    // |grad u| = 2 t^2 on (0,1/2), so its rearrangement is 2 (1/2 - t)^2.
    CHECK(g(0.5 - 0.1) == doctest::Approx(2.0 * 0.1 * 0.1).epsilon(1e-6));
  }

  TEST_CASE("extremal function realizes its gradient profile") {
    const auto m = make_product(make_cauchy(1.0), 1);
    const auto u = extremal(Profile::indicator(0.0, 0.5), m);
    const auto g = u.gradient_star();
    CHECK(g(0.1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g(0.4) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g(0.7) == doctest::Approx(0.0).epsilon(1e-12));
    const auto star = u.star();
    for (double t : {0.01, 0.1, 0.3}) CHECK(star(t) == doctest::Approx(0.5 / t - 1.0).epsilon(1e-8));
  }

  TEST_CASE("coordinate function") {
    const auto m = make_product(make_gaussian(), 1);
    const auto u = coordinate(m);
    const auto s = u.signed_star();
    for (double t : {0.01, 0.3, 0.9}) CHECK(s(t) == doctest::Approx(m.base.quantile(1.0 - t)).epsilon(1e-9));
    CHECK(u.median() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::isinf(u.oscillation()));
    // E|x| for the standard normal
    CHECK(u.integral_abs() == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-8));
    CHECK(u.integral_gradient() == doctest::Approx(1.0).epsilon(1e-8));
  }

  TEST_CASE("scaling and recentring") {
    const auto m = make_product(make_cauchy(2.0), 1);
    const auto u = transfer(TransferProfile::affine(3.0, -1.0), m);
    const auto v = u.scaled(2.5);
    CHECK(v.integral_gradient() == doctest::Approx(2.5 * u.integral_gradient()).epsilon(1e-12));
    CHECK(u.median() == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(u.recentred().median() == doctest::Approx(0.0).epsilon(1e-9));
    const auto pp = u.positive_part();
    CHECK(pp.median() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(pp.star()(0.25) == doctest::Approx(0.25).epsilon(1e-9));
  }

  TEST_CASE("bump evaluation") {
    const std::vector<Bump> b{{{0.0, 0.0}, 1.0, 1.0}};
    const double x[2] = {1.0, 0.0};
    const auto [v, g] = evaluate_bumps(b, x, 2);
    CHECK(v == doctest::Approx(std::exp(-0.5)));
    CHECK(g == doctest::Approx(std::exp(-0.5)));
  }

  TEST_CASE("bump family is deterministic and schedule independent") {
    const auto m = make_product(make_cauchy(1.0), 2);
    const auto a = bump_family(m, 4, 7, 2000, Exec::Serial);
    const auto b = bump_family(m, 4, 7, 2000, Exec::Parallel);
    REQUIRE(a.size() == 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].values() == b[i].values());
      CHECK(a[i].gradients() == b[i].gradients());
      CHECK(a[i].rep() == TestFunction::Rep::Sampled);
    }
    const auto c = bump_family(m, 4, 8, 2000, Exec::Serial);
    CHECK(a[0].values() != c[0].values());
  }
}
