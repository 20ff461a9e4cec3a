#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "isosym/certificate.hpp"
#include "isosym/functions.hpp"
#include "isosym/measures.hpp"
#include "isosym/rispace.hpp"

namespace isosym {

struct CheckOptions {
  std::size_t grid_size = 4096;
  double tol_assert = 1e-6;
  double tol_quad = 1e-10;
  /// Refinement factor of the logarithmic r-grid in Nash checks.
  int r_refine = 1;
};

/// int I(mu_f(s)) ds  vs  int |grad f| d mu.
RatioCertificate check_ledoux(const TestFunction& f, const ConvexEstimator& est,
                              const CheckOptions& opt = {});

/// int_0^t ((-f-star)' I)* ds  vs  int_0^t |grad f|* ds, sup over t.
RatioCertificate check_reafun(const TestFunction& f, const ConvexEstimator& est,
                              const CheckOptions& opt = {});

/// int |f - m(f)| d mu  vs  beta1(s) int |grad f| d mu + s Osc(f), one
/// instance per s.
RatioCertificate check_bobkov(const TestFunction& f, const ConvexEstimator& est,
                              std::span<const double> s_grid, const CheckOptions& opt = {});

/// I(mu(A)) vs the perimeter of A = {x_1 < r}, one instance per r.
RatioCertificate check_halfspace(const ProductMeasure& m, const ConvexEstimator& est,
                                 std::span<const double> r_grid, const CheckOptions& opt = {});

/// ||(f - m(f))* I(t)/t|| in X  vs  || |grad f| || in X. Flagged when neither a
/// positive lower Boyd index nor a finite peso constant is available.
RatioCertificate check_poincare(const TestFunction& f, const RISpace& X, const ConvexEstimator& est,
                                const CheckOptions& opt = {});

/// ||f*|| in Y  vs  ||f* I(t)/t|| in X for each profile.
RatioCertificate check_embedding(const RISpace& Y, const RISpace& X, const ConvexEstimator& est,
                                 std::span<const QuantileProfile> profiles,
                                 std::span<const std::string> labels = {}, const CheckOptions& opt = {});

struct CauchyNash {
  double alpha;
  double q;
};
struct SubExpNash {
  double p;
  double beta;
};
using NashVariant = std::variant<CauchyNash, SubExpNash>;

/// ||f||_X against the Nash right-hand side, for f replaced by its positive
/// part above the median.
RatioCertificate check_nash(const TestFunction& f, const RISpace& X, const NashVariant& variant,
                            const CheckOptions& opt = {});

/// sup over t of (f** - f*) I(t) / (t |grad f|**) on the Gaussian measure.
RatioCertificate check_concave_gaussian(const TestFunction& f, const CheckOptions& opt = {});

/// Runs a single-function check over a family and merges the results.
RatioCertificate check_family(std::span<const TestFunction> family,
                              const std::function<RatioCertificate(const TestFunction&)>& check,
                              Exec exec = kernels::default_exec());

enum class SharpnessKind { IndicatorEmbedding, ExtremalPoincare };

/// Proposition-style embedding instance: "5.1" is the Cauchy embedding
/// ||f||_{p alpha/(p+alpha), q} <= ||grad f||_{p,q}; "5.2" the sub-exponential
/// one ||f||_{L^{p,q}(log L)^{1-1/s}} <= ||grad f||_{p,q} with s = alpha.
struct SharpnessSetup {
  SharpnessKind kind = SharpnessKind::IndicatorEmbedding;
  std::string prop = "5.1";
  double p = 1.0;
  double q = 1.0;
  double alpha = 1.0;
};

/// Target space exponent for the setup, lowered by delta.
RISpace sharpness_target(const SharpnessSetup& setup, double delta);

/// One certificate per k in ks along the family chi_(0, 2^-k).
std::vector<RatioCertificate> sharpness_scan(const SharpnessSetup& setup, double delta,
                                             std::span<const int> ks, const CheckOptions& opt = {});

/// Ratio of the last to the first sup ratio of a sweep.
double sweep_growth(const std::vector<RatioCertificate>& sweep);
/// Ratio of the largest to the smallest sup ratio of a sweep.
double sweep_spread(const std::vector<RatioCertificate>& sweep);

}  // namespace isosym
