#include <doctest.h>

#include <cmath>

#include "isosym/error.hpp"
#include "isosym/suite.hpp"
#include "isosym/verify.hpp"

using namespace isosym;

namespace {

const ProductMeasure& cauchy1() {
  static const auto m = make_product(make_cauchy(1.0), 1);
  return m;
}

ConvexEstimator model(double alpha = 1.0, double c = 1.0) {
  EstimatorParams p;
  p.alpha = alpha;
  return make_estimator(EstimatorFamily::CauchyAlpha, p, c);
}

TestFunction ramp() { return transfer(TransferProfile::ramp_down(0.5), cauchy1()); }
TestFunction zero() { return transfer(TransferProfile::affine(0.0, 0.0), cauchy1()); }

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("ledoux closed forms") {
    const auto exact = exact_estimator(make_cauchy(1.0));
    const auto a = check_ledoux(ramp(), exact);
    REQUIRE(a.instances.size() == 1);
    CHECK(a.instances[0].lhs == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
    CHECK(a.sup_ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(a.status == Status::Holds);
    const auto b = check_ledoux(ramp(), model());
    CHECK(b.instances[0].lhs == doctest::Approx(1.0 / 24.0).epsilon(1e-10));
    CHECK(b.sup_ratio == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(check_ledoux(zero(), exact).sup_ratio == 0.0);
  }

  TEST_CASE("estimator monotonicity: halving I halves ledoux") {
    const auto est = model(1.0, 0.8);
    const auto a = check_ledoux(ramp(), est);
    const auto b = check_ledoux(ramp(), est.scaled(0.5));
    CHECK(b.instances[0].lhs == doctest::Approx(0.5 * a.instances[0].lhs).epsilon(1e-10));
    CHECK(b.sup_ratio == doctest::Approx(0.5 * a.sup_ratio).epsilon(1e-10));
  }

  TEST_CASE("reafun exactness and linearity") {
    const auto exact = exact_estimator(make_cauchy(1.0));
    Profile f;
    f.fn = [](double t) { return t < 0.5 ? t * t : 0.0; };
    f.breaks = {0.5};
    const auto u = extremal(f, cauchy1());
    const auto a = check_reafun(u, exact);
    CHECK(std::abs(a.sup_ratio - 1.0) <= 1e-4);
    const auto b = check_reafun(u, exact.scaled(0.5));
    CHECK(b.sup_ratio == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(check_reafun(zero(), exact).sup_ratio == 0.0);
  }

  TEST_CASE("bobkov closed form at s = 1/8") {
    const auto exact = exact_estimator(make_cauchy(1.0));
    const std::vector<double> s{0.125};
    const auto c = check_bobkov(ramp(), exact, s);
    REQUIRE(c.instances.size() == 1);
    CHECK(c.instances[0].lhs == doctest::Approx(0.125).epsilon(1e-9));
    CHECK(c.instances[0].rhs == doctest::Approx(1.0 / 12.0 + 0.0625).epsilon(1e-9));
    CHECK(c.sup_ratio == doctest::Approx(0.125 / (1.0 / 12.0 + 0.0625)).epsilon(1e-9));
    CHECK(check_bobkov(zero(), exact, s).sup_ratio == 0.0);
    CHECK_THROWS_AS(check_bobkov(coordinate(cauchy1()), exact, s), OscillationError);
  }

  TEST_CASE("halfspace ratios") {
    const std::vector<double> r{-1.0};
    const auto c = check_halfspace(cauchy1(), model(), r);
    CHECK(c.sup_ratio == doctest::Approx(0.5).epsilon(1e-12));
    const std::vector<double> sweep{-100.0, -3.0, -0.5, 0.0, 0.7, 20.0};
    const auto e = check_halfspace(cauchy1(), exact_estimator(make_cauchy(1.0)), sweep);
    for (const auto& in : e.instances) CHECK(in.ratio == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("poincare closed form in L1") {
    const auto c = check_poincare(ramp(), RISpace::lp(1.0), model());
    CHECK(c.instances[0].lhs == doctest::Approx(1.0 / 48.0).epsilon(1e-9));
    // |grad u|* is a numeric rearrangement, accurate to about 1e-7.
    CHECK(c.instances[0].rhs == doctest::Approx(1.0 / 12.0).epsilon(1e-6));
    CHECK(c.sup_ratio == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(std::get<std::string>(c.params.at("branch")) == "boyd");
    const auto k = check_poincare(transfer(TransferProfile::affine(2.0, 0.0), cauchy1()), RISpace::lp(1.0), model());
    CHECK(k.sup_ratio == 0.0);
  }

  TEST_CASE("poincare without either hypothesis is flagged") {
    EstimatorParams p;
    p.p = 0.5;
    const auto m = make_product(make_subexp(0.5), 1);
    const auto est = make_estimator(EstimatorFamily::SubExpP, p);
    const auto u = transfer(TransferProfile::ramp_down(0.5), m);
    const auto c = check_poincare(u, RISpace::lorentz_zygmund(HUGE_VAL, HUGE_VAL, 0.0), est);
    CHECK(c.status == Status::Flagged);
  }

  TEST_CASE("embedding equality instance") {
    const std::vector<QuantileProfile> f{{Profile::indicator(0.0, 0.25), ProfileKind::Nonincreasing}};
    const auto c = check_embedding(RISpace::lorentz(0.5, 1.0), RISpace::lp(1.0), model(), f);
    CHECK(c.instances[0].lhs == doctest::Approx(1.0 / 32.0).epsilon(1e-10));
    CHECK(c.sup_ratio == doctest::Approx(1.0).epsilon(1e-9));
    const std::vector<QuantileProfile> z{{Profile::constant(0.0), ProfileKind::Nonincreasing}};
    CHECK(check_embedding(RISpace::lorentz(0.5, 1.0), RISpace::lp(1.0), model(), z).sup_ratio == 0.0);
  }

  TEST_CASE("scaling covariance") {
    const double lambda = 3.7;
    const auto u = ramp();
    const auto v = u.scaled(lambda);
    const auto est = model();
    const auto check_pair = [&](const RatioCertificate& a, const RatioCertificate& b) {
      REQUIRE(a.instances.size() == b.instances.size());
      for (std::size_t i = 0; i < a.instances.size(); ++i) {
        CHECK(b.instances[i].lhs == doctest::Approx(lambda * a.instances[i].lhs).epsilon(1e-10));
        CHECK(b.instances[i].rhs == doctest::Approx(lambda * a.instances[i].rhs).epsilon(1e-10));
        CHECK(b.instances[i].ratio == doctest::Approx(a.instances[i].ratio).epsilon(1e-10));
      }
    };
    check_pair(check_ledoux(u, est), check_ledoux(v, est));
    check_pair(check_poincare(u, RISpace::lorentz(2.0, 1.0), est), check_poincare(v, RISpace::lorentz(2.0, 1.0), est));
    const std::vector<QuantileProfile> f{{Profile::indicator(0.0, 0.1), ProfileKind::Nonincreasing}};
    const std::vector<QuantileProfile> g{{Profile::indicator(0.0, 0.1, lambda), ProfileKind::Nonincreasing}};
    check_pair(check_embedding(RISpace::lorentz(0.5, 1.0), RISpace::lp(1.0), est, f),
               check_embedding(RISpace::lorentz(0.5, 1.0), RISpace::lp(1.0), est, g));
  }

  TEST_CASE("chain consistency on the extremal family") {
    const auto& grid = grid_of_size(1024);
    const auto family = extremal_family(cauchy1(), grid);
    CheckOptions opt;
    opt.grid_size = 1024;
    std::vector<double> s;
    for (int i = 0; i < 16; ++i) s.push_back((i + 0.5) / 32.0);
    for (const auto& est : {model(), model(1.0, 2.0)}) {
      for (const auto& u : family) {
        const auto l = check_ledoux(u, est, opt);
        if (l.status != Status::Holds) continue;
        const auto r = check_reafun(u, est, opt);
        CHECK(r.status == Status::Holds);
        if (r.status != Status::Holds || std::isinf(u.oscillation())) continue;
        CHECK(check_bobkov(u, est, s, opt).status == Status::Holds);
      }
    }
  }

  TEST_CASE("nash: trivial input and r-grid refinement") {
    const auto X = RISpace::lp(2.0);
    const NashVariant v = CauchyNash{1.0, 4.0};
    CHECK(check_nash(zero(), X, v).sup_ratio == 0.0);
    CheckOptions fine;
    fine.r_refine = 4;
    const auto a = check_nash(ramp(), X, v);
    const auto b = check_nash(ramp(), X, v, fine);
    CHECK(std::isfinite(a.sup_ratio));
    CHECK(std::abs(b.sup_ratio / a.sup_ratio - 1.0) <= 0.05);
    const NashVariant bad = CauchyNash{1.0, 0.25};
    CHECK(check_nash(ramp(), X, bad).status == Status::Flagged);
  }

  TEST_CASE("concave gaussian comparison") {
    const auto m = make_product(make_gaussian(), 1);
    CHECK(check_concave_gaussian(coordinate(m)).sup_ratio <= 1.0 + 1e-3);
    CHECK(check_concave_gaussian(transfer(TransferProfile::affine(1.0, 0.0), m)).sup_ratio == 0.0);
    CHECK_THROWS(check_concave_gaussian(ramp()));
  }

  TEST_CASE("sharpness at the base exponent stays bounded") {
    SharpnessSetup setup;
    std::vector<int> ks;
    for (int k = 1; k <= 10; ++k) ks.push_back(k);
    const auto base = sharpness_scan(setup, 0.0, ks);
    REQUIRE(base.size() == 10);
    CHECK(sweep_spread(base) <= 2.0);
    for (const auto& c : base) CHECK(c.sup_ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sharpness_target(setup, 0.05).name() == RISpace::lorentz(0.45, 1.0).name());
  }

  TEST_CASE("family checks are schedule independent") {
    const auto family = extremal_family(cauchy1(), default_grid());
    const auto est = model();
    const auto run = [&](const TestFunction& u) { return check_ledoux(u, est); };
    const auto a = check_family(family, run, Exec::Serial);
    const auto b = check_family(family, run, Exec::Parallel);
    CHECK(to_csv({a}) == to_csv({b}));
    CHECK(a.instances.size() == family.size());
  }
}
