#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isosym/grid.hpp"
#include "isosym/measures.hpp"
#include "isosym/profile.hpp"

namespace isosym {

/// Gaussian bump amplitude * exp(-|x - center|^2 / (2 sigma^2)).
struct Bump {
  std::vector<double> center;
  double sigma = 1.0;
  double amplitude = 1.0;
};

/// A Lipschitz function on (R^n, mu^n), either a transfer function
/// u(x) = F(H(x_1)) whose rearrangements reduce to one-dimensional Lebesgue
/// computations, or values and gradient moduli on a sample of mu^n.
class TestFunction {
 public:
  enum class Rep { Transfer, Sampled };

  static TestFunction transfer(TransferProfile F, const ProductMeasure& m);
  static TestFunction sampled(const ProductMeasure& m, std::shared_ptr<const PointCloud> points,
                              std::vector<double> values, std::vector<double> gradients);

  Rep rep() const { return rep_; }
  const ProductMeasure& measure() const { return measure_; }
  const TransferProfile& profile() const { return F_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& gradients() const { return grads_; }
  const std::shared_ptr<const PointCloud>& points() const { return points_; }
  const std::vector<Bump>& bumps() const { return bumps_; }
  const std::string& label() const { return label_; }

  TestFunction with_label(std::string label) const;
  TestFunction with_bumps(std::vector<Bump> bumps) const;
  /// Replaces |grad u| (in the transfer variable t = H(x_1)) by an exact profile.
  TestFunction with_gradient(Profile g) const;

  /// t -> |grad u| at H(x_1) = t: |F'(t)| I_mu(t) unless overridden.
  Profile gradient_profile() const;

  QuantileProfile signed_star(const GradedGrid& grid = default_grid()) const;
  QuantileProfile star(const GradedGrid& grid = default_grid()) const;
  QuantileProfile gradient_star(const GradedGrid& grid = default_grid()) const;

  /// ess sup u - ess inf u (possibly infinite).
  double oscillation() const;
  double median() const;
  /// Integral of |u - c| d mu.
  double integral_abs(double c = 0.0, const GradedGrid& grid = default_grid()) const;
  /// Integral of |grad u| d mu.
  double integral_gradient(const GradedGrid& grid = default_grid()) const;

  TestFunction scaled(double lambda) const;
  /// u - median(u).
  TestFunction recentred() const;
  /// (u - median(u))_+, a nonnegative function with median 0.
  TestFunction positive_part() const;

 private:
  TestFunction(Rep rep, const ProductMeasure& m) : rep_(rep), measure_(m) {}
  Rep rep_;
  ProductMeasure measure_;
  TransferProfile F_;
  std::optional<Profile> gradient_;
  std::shared_ptr<const PointCloud> points_;
  std::vector<double> values_;
  std::vector<double> grads_;
  std::vector<Bump> bumps_;
  std::string label_;
};

TestFunction transfer(TransferProfile F, const ProductMeasure& m);

/// u = F(H(x_1)) with F(t) = int_t^1 f(s) ds / I_mu(s), I_mu the exact profile;
/// |grad u|* = f* exactly. f must be nonnegative and vanish on [1/2, 1).
TestFunction extremal(const Profile& f, const ProductMeasure& m, const GradedGrid& grid = default_grid());

/// u(x) = x_1, i.e. F = H^-1 with F' = 1/phi(H^-1).
TestFunction coordinate(const ProductMeasure& m);

/// Sums of one to three Gaussian bumps on a shared seeded sample of mu^n.
std::vector<TestFunction> bump_family(const ProductMeasure& m, std::size_t count, std::uint64_t seed,
                                      std::size_t points = 20000, Exec exec = kernels::default_exec());

/// Value and gradient modulus of a bump sum at x.
std::pair<double, double> evaluate_bumps(const std::vector<Bump>& bumps, const double* x, int dimension);

}  // namespace isosym
