#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "isosym/certificate.hpp"
#include "isosym/functions.hpp"
#include "isosym/measures.hpp"
#include "isosym/rispace.hpp"

namespace isosym {

/// Settings shared by every suite. Optional fields take suite-specific
/// defaults when unset.
struct SuiteConfig {
  std::string suite;
  std::string measure = "cauchy";
  double alpha = 1.0;
  std::optional<double> p;
  double bigN = -1.0;
  int dim = 1;
  /// cauchy | subexp | negdim | gaussian | exact; empty follows the measure.
  std::string estimator;
  /// Estimator constant; unset means the exact profile (theorem32) or c = 1.
  std::optional<double> c;
  std::optional<std::string> space;
  std::size_t grid = 4096;
  double tol_quad = 1e-10;
  double tol_assert = 1e-6;
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  std::string prop = "5.1";
  std::optional<double> q;
  /// Lorentz index of the sub-exponential embedding (prop 5.2).
  std::optional<double> r;
  double delta = 0.05;
  double beta = 1.0;
  int r_refine = 1;
};

/// Sets one field from its flag name (without dashes). Throws UsageError on
/// unknown keys or malformed values.
void apply_setting(SuiteConfig& config, const std::string& key, const std::string& value);

/// key=value lines; blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Throws UsageError unless the grid is a power of two >= 64 and the
/// tolerances are positive.
void validate(const SuiteConfig& config);

/// lp:p | lorentz:p,q | lz:p,q,a, with "inf" accepted for p and q.
RISpace parse_space(const std::string& descriptor);

ProductMeasure measure_of(const SuiteConfig& config);
/// Model estimator of the configured family with constant c (default 1).
ConvexEstimator estimator_of(const SuiteConfig& config);

/// u = extremal(t^b chi_(0,a)) for b in {1, 1.5, 2, 3, 4}, a in
/// {1/2, 1/4, 1/8, 1/16}, followed by the ramp (1/2 - t)_+.
std::vector<TestFunction> extremal_family(const ProductMeasure& m, const GradedGrid& grid);

struct SuiteResult {
  std::vector<RatioCertificate> certificates;
  /// Plot-ready text table (the sharpness divergence table, for instance).
  std::string table;
  int exit_code = 0;
};

/// Runs theorem32 | poincare | nash | sharpness | gaussian-concave | all.
SuiteResult run_suite(const SuiteConfig& config);

/// Exit code for a set of statuses: 0 holds / holds-with-constant, 2 flagged
/// or indeterminate, 1 diverges.
int exit_code_for(const std::vector<RatioCertificate>& certs);

/// Writes <out>.json and <out>.csv.
void write_outputs(const std::vector<RatioCertificate>& certs, const std::string& out);

std::string summary_table(const std::vector<RatioCertificate>& certs);

/// Reads certificate files (a JSON array or a single object each) and
/// returns their summary rows sorted by id. Malformed files throw ParseError
/// naming the file and line.
std::vector<RatioCertificate> load_certificates(const std::vector<std::string>& paths);

}  // namespace isosym
