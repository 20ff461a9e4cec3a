#include "isosym/measures.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <sstream>

#include "isosym/error.hpp"

namespace isosym {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(15);
  os << x;
  return os.str();
}

const boost::math::normal& standard_normal() {
  static const boost::math::normal n(0.0, 1.0);
  return n;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ModelMeasure1D make_cauchy(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("cauchy: alpha must be positive");
  return ModelMeasure1D(MeasureFamily::Cauchy, alpha, 2.0 / alpha);
}

ModelMeasure1D make_subexp(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("subexp: p must lie in (0,1)");
  return ModelMeasure1D(MeasureFamily::SubExp, p, 2.0 * std::tgamma(1.0 + 1.0 / p));
}

ModelMeasure1D make_gaussian() {
  return ModelMeasure1D(MeasureFamily::Gaussian, 0.0, std::sqrt(2.0 * M_PI));
}

double ModelMeasure1D::density(double s) const {
  const double a = std::abs(s);
  switch (family_) {
    case MeasureFamily::Cauchy:
      return 0.5 * parameter_ * std::pow(1.0 + a, -(1.0 + parameter_));
    case MeasureFamily::SubExp:
      return std::exp(-std::pow(a, parameter_)) / z_;
    case MeasureFamily::Gaussian:
      return boost::math::pdf(standard_normal(), s);
  }
  return 0.0;
}

double ModelMeasure1D::cdf(double r) const {
  if (std::isnan(r)) throw DomainError("cdf: NaN argument");
  switch (family_) {
    case MeasureFamily::Cauchy: {
      const double lower = 0.5 * std::pow(1.0 + std::abs(r), -parameter_);
      return r <= 0.0 ? lower : 1.0 - lower;
    }
    case MeasureFamily::SubExp: {
      if (r == 0.0) return 0.5;
      const double a = 1.0 / parameter_;
      const double x = std::pow(std::abs(r), parameter_);
      if (!std::isfinite(x)) return r < 0.0 ? 0.0 : 1.0;
      const double lower = 0.5 * boost::math::gamma_q(a, x);
      return r < 0.0 ? lower : 0.5 + 0.5 * boost::math::gamma_p(a, x);
    }
    case MeasureFamily::Gaussian:
      if (std::isinf(r)) return r < 0.0 ? 0.0 : 1.0;
      return boost::math::cdf(standard_normal(), r);
  }
  return 0.0;
}

double ModelMeasure1D::quantile(double t) const {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("quantile: t must lie in (0,1)");
  if (t == 0.5) return 0.0;
  const bool upper = t > 0.5;
  const double m = upper ? 1.0 - t : t;
  double r = 0.0;
  switch (family_) {
    case MeasureFamily::Cauchy:
      r = 1.0 - std::pow(2.0 * m, -1.0 / parameter_);
      break;
    case MeasureFamily::SubExp: {
      const double a = 1.0 / parameter_;
      const double q = 2.0 * m;
      const double x = q > 0.5 ? boost::math::gamma_p_inv(a, 1.0 - q) : boost::math::gamma_q_inv(a, q);
      r = -std::pow(x, a);
      break;
    }
    case MeasureFamily::Gaussian:
      r = boost::math::quantile(standard_normal(), m);
      break;
  }
  return upper ? -r : r;
}

std::string ModelMeasure1D::name() const {
  switch (family_) {
    case MeasureFamily::Cauchy:
      return "cauchy(alpha=" + fmt(parameter_) + ")";
    case MeasureFamily::SubExp:
      return "subexp(p=" + fmt(parameter_) + ")";
    case MeasureFamily::Gaussian:
      return "gaussian";
  }
  return "";
}

double exact_profile(const ModelMeasure1D& m, double t) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("exact_profile: t must lie in (0,1)");
  const double s = std::min(t, 1.0 - t);
  if (m.family() == MeasureFamily::Cauchy) {
    const double a = m.parameter();
    return a * std::pow(2.0, 1.0 / a) * std::pow(s, 1.0 + 1.0 / a);
  }
  return m.density(m.quantile(s));
}

ProductMeasure make_product(const ModelMeasure1D& base, int dimension) {
  if (dimension < 1) throw DomainError("product measure: dimension must be >= 1");
  return ProductMeasure{base, dimension};
}

HalfSpace halfspace(const ProductMeasure& m, double r) {
  return {m.base.cdf(r), m.base.density(r)};
}

double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t coordinate) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ index) ^ coordinate);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

PointCloud sample(const ProductMeasure& m, std::size_t count, std::uint64_t seed, Exec exec) {
  if (count == 0) throw EmptyInputError("sample: count must be positive");
  PointCloud cloud;
  cloud.dimension = m.dimension;
  const auto n = static_cast<std::size_t>(m.dimension);
  cloud.coords.resize(count * n);
  kernels::for_each_index(
      count,
      [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
          cloud.coords[i * n + j] = m.base.quantile(counter_uniform(seed, i, j));
        }
      },
      exec);
  return cloud;
}

double ConvexEstimator::operator()(double t) const {
  if (!(t > 0.0 && t < 1.0)) return 0.0;
  const double s = std::min(t, 1.0 - t);
  const double n = static_cast<double>(params_.dimension);
  switch (family_) {
    case EstimatorFamily::CauchyAlpha:
      return c_ * std::pow(n, -1.0 / params_.alpha) * std::pow(s, 1.0 + 1.0 / params_.alpha);
    case EstimatorFamily::SubExpP:
      return c_ * s * std::pow(std::log(n / s), 1.0 - 1.0 / params_.p);
    case EstimatorFamily::NegDimN:
      return c_ * std::pow(s, -1.0 / params_.bigN);
    case EstimatorFamily::GaussianConcave:
      return c_ * s * std::sqrt(std::log(M_E / s));
    case EstimatorFamily::ExactProfile:
      return c_ * exact_profile(*measure_, s);
  }
  return 0.0;
}

ConvexEstimator ConvexEstimator::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("estimator scale must be positive");
  ConvexEstimator e = *this;
  e.c_ *= factor;
  return e;
}

std::string ConvexEstimator::name() const {
  std::string base;
  switch (family_) {
    case EstimatorFamily::CauchyAlpha:
      base = "cauchy(alpha=" + fmt(params_.alpha) + ",n=" + std::to_string(params_.dimension) + ")";
      break;
    case EstimatorFamily::SubExpP:
      base = "subexp(p=" + fmt(params_.p) + ",n=" + std::to_string(params_.dimension) + ")";
      break;
    case EstimatorFamily::NegDimN:
      base = "negdim(N=" + fmt(params_.bigN) + ")";
      break;
    case EstimatorFamily::GaussianConcave:
      base = "gaussian-concave";
      break;
    case EstimatorFamily::ExactProfile:
      base = "exact[" + measure_->name() + "]";
      break;
  }
  return c_ == 1.0 ? base : fmt(c_) + "*" + base;
}

ConvexEstimator make_estimator(EstimatorFamily family, const EstimatorParams& params, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("estimator constant must be positive");
  if (params.dimension < 1) throw DomainError("estimator dimension must be >= 1");
  switch (family) {
    case EstimatorFamily::CauchyAlpha:
      if (!(params.alpha > 0.0)) throw DomainError("estimator: alpha must be positive");
      break;
    case EstimatorFamily::SubExpP:
      if (!(params.p > 0.0 && params.p < 1.0)) throw DomainError("estimator: p must lie in (0,1)");
      break;
    case EstimatorFamily::NegDimN:
      if (!(params.bigN < 0.0)) throw DomainError("estimator: N must be negative");
      break;
    case EstimatorFamily::GaussianConcave:
      break;
    case EstimatorFamily::ExactProfile:
      throw DomainError("use exact_estimator for the exact-profile family");
  }
  ConvexEstimator e;
  e.family_ = family;
  e.params_ = params;
  e.c_ = c;
  return e;
}

ConvexEstimator exact_estimator(const ModelMeasure1D& m, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("estimator constant must be positive");
  ConvexEstimator e;
  e.family_ = EstimatorFamily::ExactProfile;
  e.c_ = c;
  e.measure_ = m;
  if (m.family() == MeasureFamily::Cauchy) e.params_.alpha = m.parameter();
  if (m.family() == MeasureFamily::SubExp) e.params_.p = m.parameter();
  return e;
}

}  // namespace isosym
