#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isosym/kernels.hpp"

namespace isosym {

enum class MeasureFamily { Cauchy, SubExp, Gaussian };

/// Symmetric probability measure on the real line with closed-form or
/// special-function density, CDF H and quantile H^-1.
class ModelMeasure1D {
 public:
  MeasureFamily family() const { return family_; }
  /// alpha for Cauchy, p for SubExp, 0 for Gaussian.
  double parameter() const { return parameter_; }
  double normalization() const { return z_; }

  double density(double s) const;
  double cdf(double r) const;
  double quantile(double t) const;
  std::string name() const;

  friend ModelMeasure1D make_cauchy(double alpha);
  friend ModelMeasure1D make_subexp(double p);
  friend ModelMeasure1D make_gaussian();

 private:
  ModelMeasure1D(MeasureFamily f, double param, double z) : family_(f), parameter_(param), z_(z) {}
  MeasureFamily family_;
  double parameter_;
  double z_;
};

/// phi(s) = (alpha/2)(1+|s|)^-(1+alpha).
ModelMeasure1D make_cauchy(double alpha);
/// phi(s) = exp(-|s|^p) / (2 Gamma(1+1/p)), 0 < p < 1.
ModelMeasure1D make_subexp(double p);
ModelMeasure1D make_gaussian();

/// phi(H^-1(t)) for t in (0,1), evaluated at min(t, 1-t).
double exact_profile(const ModelMeasure1D& m, double t);

struct ProductMeasure {
  ModelMeasure1D base;
  int dimension = 1;
};
ProductMeasure make_product(const ModelMeasure1D& base, int dimension);

struct HalfSpace {
  double mass;
  double perimeter;
};
/// Mass and perimeter of the coordinate half-space {x_1 < r}.
HalfSpace halfspace(const ProductMeasure& m, double r);

/// Points stored row-major: point i occupies coords[i*dimension .. +dimension).
struct PointCloud {
  int dimension = 1;
  std::vector<double> coords;
  std::size_t size() const { return coords.size() / static_cast<std::size_t>(dimension); }
  double at(std::size_t i, int j) const { return coords[i * static_cast<std::size_t>(dimension) + j]; }
};

/// Uniform variate in (0,1) determined by (seed, index, coordinate) alone.
double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t coordinate);

/// i.i.d. points of the product measure by inverse-CDF sampling.
PointCloud sample(const ProductMeasure& m, std::size_t count, std::uint64_t seed,
                  Exec exec = kernels::default_exec());

enum class EstimatorFamily { CauchyAlpha, SubExpP, NegDimN, GaussianConcave, ExactProfile };

struct EstimatorParams {
  double alpha = 1.0;
  double p = 0.5;
  double bigN = -1.0;
  int dimension = 1;
};

/// Isoperimetric estimator I on [0,1], symmetric about 1/2 and vanishing at
/// the endpoints. The ExactProfile family wraps phi(H^-1(t)) of a measure.
class ConvexEstimator {
 public:
  double operator()(double t) const;
  EstimatorFamily family() const { return family_; }
  const EstimatorParams& params() const { return params_; }
  double constant() const { return c_; }
  const std::optional<ModelMeasure1D>& measure() const { return measure_; }
  ConvexEstimator scaled(double factor) const;
  std::string name() const;

  friend ConvexEstimator make_estimator(EstimatorFamily, const EstimatorParams&, double);
  friend ConvexEstimator exact_estimator(const ModelMeasure1D&, double);

 private:
  ConvexEstimator() = default;
  EstimatorFamily family_ = EstimatorFamily::CauchyAlpha;
  EstimatorParams params_;
  double c_ = 1.0;
  std::optional<ModelMeasure1D> measure_;
};

/// CauchyAlpha:     c n^(-1/alpha) m^(1+1/alpha)
/// SubExpP:         c m (log(n/m))^(1-1/p)
/// NegDimN:         c m^(-1/N)
/// GaussianConcave: c m (log(e/m))^(1/2)
/// with m = min(t, 1-t).
ConvexEstimator make_estimator(EstimatorFamily family, const EstimatorParams& params,
                               double c = 1.0);
ConvexEstimator exact_estimator(const ModelMeasure1D& m, double c = 1.0);

}  // namespace isosym
