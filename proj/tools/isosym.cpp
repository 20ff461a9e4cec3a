// isosym: verification suites, norms, profiles and operators from the shell.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isosym/error.hpp"
#include "isosym/operators.hpp"
#include "isosym/rispace.hpp"
#include "isosym/suite.hpp"

namespace {

constexpr int kUsage = 64;

// %.15g, with ".0" appended to integral values so 1 prints as 1.0.
std::string plain(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

struct Settings {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_file;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    options[key] = app->add_option("--" + key, values[key], help);
  }
  void add_common(CLI::App* app) {
    add(app, "measure", "cauchy | subexp | gaussian");
    add(app, "alpha", "Cauchy tail exponent");
    add(app, "p", "sub-exponential shape (or Lorentz p for prop 5.1)");
    add(app, "bigN", "negative dimension N of the negdim estimator");
    add(app, "dim", "dimension n of the product measure");
    add(app, "c", "estimator constant");
    add(app, "estimator", "cauchy | subexp | negdim | gaussian | exact");
    add(app, "space", "lp:p | lorentz:p,q | lz:p,q,a");
    add(app, "grid", "graded grid size (power of two >= 64)");
    add(app, "tol-quad", "quadrature tolerance");
    add(app, "tol-assert", "assertion tolerance");
    add(app, "seed", "random seed");
    app->add_option("--config", config_file, "key=value file; flags win");
  }

  // Config file entries first, then the flags given on the command line.
  isosym::SuiteConfig resolve(const std::string& suite) const {
    isosym::SuiteConfig c;
    c.suite = suite;
    if (!config_file.empty()) {
      for (const auto& [k, v] : isosym::read_config_file(config_file)) isosym::apply_setting(c, k, v);
    }
    for (const auto& [k, opt] : options) {
      if (opt->count() > 0) isosym::apply_setting(c, k, values.at(k));
    }
    isosym::validate(c);
    return c;
  }
};

int run_verify(const std::string& suite, const Settings& s) {
  const auto config = s.resolve(suite);
  const auto result = isosym::run_suite(config);
  if (config.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : result.certificates) arr.push_back(isosym::to_json(c));
    std::cout << arr.dump(2) << "\n";
  } else if (config.format == "csv") {
    std::cout << isosym::to_csv(result.certificates);
  } else {
    std::cout << isosym::summary_table(result.certificates);
  }
  if (!result.table.empty()) std::cout << "\n" << result.table;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isoperimetric symmetrization toolkit"};
  app.require_subcommand(1);
  Settings settings;

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "theorem32 | poincare | nash | sharpness | gaussian-concave | all")
      ->required();
  settings.add_common(verify);
  settings.add(verify, "out", "write <out>.json and <out>.csv");
  settings.add(verify, "format", "json | csv: print certificates instead of the summary");
  settings.add(verify, "prop", "sharpness proposition: 5.1 | 5.2");
  settings.add(verify, "q", "Lorentz q (sharpness) or weak-type exponent (nash)");
  settings.add(verify, "r", "Lorentz index for prop 5.2");
  settings.add(verify, "delta", "exponent perturbation for sharpness");
  settings.add(verify, "beta", "exponent of the sub-exponential Nash variant");
  settings.add(verify, "r-refine", "refinement of the Nash r-grid");

  auto* norm = app.add_subcommand("norm", "quasi-norm of a decreasing profile");
  std::string space;
  double indicator = NAN, power = NAN;
  std::size_t norm_grid = 4096;
  norm->add_option("--space", space, "lp:p | lorentz:p,q | lz:p,q,a")->required();
  auto* ind_opt = norm->add_option("--indicator", indicator, "f* = indicator of [0,u)");
  auto* pow_opt = norm->add_option("--power", power, "f* = t^-e");
  ind_opt->excludes(pow_opt);
  norm->add_option("--grid", norm_grid, "graded grid size");

  auto* profile = app.add_subcommand("profile", "exact isoperimetric profile and estimator");
  Settings profile_settings;
  profile_settings.add_common(profile);
  std::vector<double> ts;
  std::size_t points = 0;
  profile->add_option("--t", ts, "evaluation points in (0,1)");
  profile->add_option("--points", points, "uniform sweep of this many points of (0,1)");

  auto* op = app.add_subcommand("operator", "beta1, recovered estimator and peso quantities");
  Settings op_settings;
  op_settings.add_common(op);
  std::string which;
  double at = NAN;
  op->add_option("--op", which, "beta1 | recover | peso | peso-constant")->required();
  op->add_option("--at", at, "argument s or t");

  auto* report = app.add_subcommand("report", "summarize certificate files");
  std::vector<std::string> files;
  report->add_option("files", files, "certificate JSON files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return run_verify(suite, settings);

    if (*norm) {
      if (!isosym::valid_grid_size(norm_grid)) throw isosym::UsageError("--grid must be a power of two >= 64");
      const auto X = isosym::parse_space(space);
      isosym::QuantileProfile f{isosym::Profile::indicator(0.0, 1.0), isosym::ProfileKind::Nonincreasing};
      if (ind_opt->count() > 0) {
        if (!(indicator > 0.0 && indicator <= 1.0)) throw isosym::UsageError("--indicator must lie in (0,1]");
        f.profile = isosym::Profile::indicator(0.0, indicator);
      } else if (pow_opt->count() > 0) {
        if (!(power >= 0.0)) throw isosym::UsageError("--power must be nonnegative");
        f.profile = isosym::Profile::power(1.0, -power);
      }
      std::cout << plain(isosym::quasinorm(X, f, isosym::grid_of_size(norm_grid))) << "\n";
      return 0;
    }

    if (*profile) {
      const auto c = profile_settings.resolve("profile");
      const auto m = isosym::measure_of(c);
      const auto est = isosym::estimator_of(c);
      for (std::size_t i = 1; i <= points; ++i) ts.push_back(static_cast<double>(i) / static_cast<double>(points + 1));
      std::cout << "t,exact_profile,estimator\n";
      for (double t : ts) {
        std::cout << isosym::format_number(t) << "," << isosym::format_number(isosym::exact_profile(m.base, t))
                  << "," << isosym::format_number(est(t)) << "\n";
      }
      return 0;
    }

    if (*op) {
      const auto c = op_settings.resolve("operator");
      const auto est = isosym::estimator_of(c);
      const auto& grid = isosym::grid_of_size(c.grid);
      double v = 0.0;
      if (which == "beta1") v = isosym::beta1(est, at);
      else if (which == "recover") v = isosym::recover_estimator(est, at);
      else if (which == "peso") v = isosym::peso_value(est, at);
      else if (which == "peso-constant") v = isosym::peso_constant(est, grid);
      else throw isosym::UsageError("--op must be beta1, recover, peso or peso-constant");
      std::cout << plain(v) << "\n";
      return 0;
    }

    if (*report) {
      const auto certs = isosym::load_certificates(files);
      std::cout << isosym::summary_table(certs);
      return isosym::exit_code_for(certs);
    }
  } catch (const isosym::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const isosym::DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
