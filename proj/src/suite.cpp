#include "isosym/suite.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "isosym/error.hpp"
#include "isosym/verify.hpp"

namespace isosym {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  if (s == "inf" || s == "+inf") return HUGE_VAL;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError("--" + key + ": expected a number, got '" + text + "'");
  }
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError("--" + key + ": expected an integer, got '" + text + "'");
  }
  return v;
}

CheckOptions options_of(const SuiteConfig& c) {
  CheckOptions o;
  o.grid_size = c.grid;
  o.tol_assert = c.tol_assert;
  o.tol_quad = c.tol_quad;
  o.r_refine = c.r_refine;
  return o;
}

double subexp_p(const SuiteConfig& c) { return c.p.value_or(0.5); }

// Evenly spread points of (0, 1/2) and their images under the quantile.
std::vector<double> s_grid_64() {
  std::vector<double> s(64);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = (static_cast<double>(i) + 0.5) / 128.0;
  return s;
}

std::vector<double> r_grid_64(const ProductMeasure& m) {
  std::vector<double> r(64);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = m.base.quantile((static_cast<double>(i) + 0.5) / 64.0);
  return r;
}

// Sum of one-dimensional Gaussian bumps composed with the quantile.
TestFunction bump_transfer(const ProductMeasure& m, std::vector<Bump> bumps, std::string label) {
  const auto base = m.base;
  auto value_and_slope = [bumps](double x) {
    double v = 0.0, d = 0.0;
    for (const auto& b : bumps) {
      const double z = (x - b.center[0]) / b.sigma;
      const double e = b.amplitude * std::exp(-0.5 * z * z);
      v += e;
      d -= e * z / b.sigma;
    }
    return std::pair{v, d};
  };
  Profile F;
  F.fn = [base, value_and_slope](double t) { return value_and_slope(base.quantile(t)).first; };
  F.derivative = [base, value_and_slope](double t) {
    const double x = base.quantile(t);
    const double d = value_and_slope(x).second;
    return d == 0.0 ? 0.0 : d / base.density(x);
  };
  F.left_limit = 0.0;
  F.right_limit = 0.0;
  Profile g;
  g.fn = [base, value_and_slope](double t) { return std::abs(value_and_slope(base.quantile(t)).second); };
  g.left_limit = 0.0;
  g.right_limit = 0.0;
  return TestFunction::transfer(TransferProfile::from(std::move(F)), m)
      .with_gradient(std::move(g))
      .with_bumps(std::move(bumps))
      .with_label(std::move(label));
}

std::vector<TestFunction> gaussian_bumps(const ProductMeasure& m, std::size_t count, std::uint64_t seed) {
  std::vector<TestFunction> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::uint64_t c = 0;
    auto u = [&] { return counter_uniform(seed, k, c++); };
    const int nb = 1 + static_cast<int>(u() * 3.0);
    std::vector<Bump> bumps;
    for (int b = 0; b < nb; ++b) {
      Bump bump;
      bump.center = {4.0 * u() - 2.0};
      bump.sigma = 0.3 + 1.2 * u();
      bump.amplitude = 2.0 * u() - 1.0;
      bumps.push_back(std::move(bump));
    }
    out.push_back(bump_transfer(m, std::move(bumps), "bump#" + std::to_string(k)));
  }
  return out;
}

void finish_family(RatioCertificate& c, const std::string& family) { c.family = family; }

SuiteResult theorem32(const SuiteConfig& cfg) {
  const auto m = measure_of(cfg);
  const auto& grid = grid_of_size(cfg.grid);
  const auto opt = options_of(cfg);
  const auto est = cfg.c ? estimator_of(cfg) : exact_estimator(m.base);
  const auto fam = extremal_family(m, grid);

  SuiteResult r;
  auto ledoux = check_family(fam, [&](const TestFunction& f) { return check_ledoux(f, est, opt); });
  finish_family(ledoux, "extremal family");
  auto reafun = check_family(fam, [&](const TestFunction& f) { return check_reafun(f, est, opt); });
  finish_family(reafun, "extremal family");

  std::vector<TestFunction> bounded;
  for (const auto& f : fam) {
    if (std::isfinite(f.oscillation())) bounded.push_back(f);
  }
  const auto s = s_grid_64();
  auto bobkov = check_family(bounded, [&](const TestFunction& f) { return check_bobkov(f, est, s, opt); });
  finish_family(bobkov, "bounded extremal family");

  // Level sets of bumps are not half-lines, so phi(H^-1) need not bound their
  // perimeter; bumps are certified against the model estimator instead.
  const auto model = estimator_of(cfg);
  const auto bumps = bump_family(m, 8, cfg.seed);
  auto bobkov_bumps =
      check_family(bumps, [&](const TestFunction& f) { return check_bobkov(f, model, s, opt); });
  finish_family(bobkov_bumps, "bump family");
  bobkov_bumps.params["seed"] = static_cast<double>(cfg.seed);

  const auto rs = r_grid_64(m);
  auto half = check_halfspace(m, est, rs, opt);

  r.certificates = {std::move(ledoux), std::move(reafun), std::move(bobkov), std::move(bobkov_bumps),
                    std::move(half)};
  return r;
}

std::optional<RISpace> embedding_target(const SuiteConfig& cfg, const RISpace& X) {
  double p = 0.0, q = 0.0;
  if (X.kind() == SpaceKind::Lp) {
    p = q = X.p();
  } else if (X.kind() == SpaceKind::Lorentz) {
    p = X.p();
    q = X.q();
  } else {
    return std::nullopt;
  }
  if (!std::isfinite(p)) return std::nullopt;
  if (cfg.measure == "cauchy") return RISpace::lorentz(p * cfg.alpha / (p + cfg.alpha), q);
  if (cfg.measure == "subexp") return RISpace::lorentz_zygmund(p, q, 1.0 - 1.0 / subexp_p(cfg));
  return RISpace::lorentz_zygmund(p, q, 0.5);
}

SuiteResult poincare(const SuiteConfig& cfg) {
  const auto m = measure_of(cfg);
  const auto& grid = grid_of_size(cfg.grid);
  const auto opt = options_of(cfg);
  const auto est = estimator_of(cfg);
  const auto X = parse_space(cfg.space.value_or("lp:2"));
  const auto fam = extremal_family(m, grid);

  SuiteResult r;
  auto c = check_family(fam, [&](const TestFunction& f) { return check_poincare(f, X, est, opt); });
  finish_family(c, "extremal family");
  r.certificates.push_back(std::move(c));

  if (const auto Y = embedding_target(cfg, X)) {
    std::vector<QuantileProfile> profiles;
    std::vector<std::string> labels;
    for (const auto& f : fam) {
      profiles.push_back(f.star(grid));
      labels.push_back(f.label());
    }
    auto e = check_embedding(*Y, X, est, profiles, labels, opt);
    e.params["measure"] = m.base.name();
    finish_family(e, "extremal family");
    r.certificates.push_back(std::move(e));
  }
  return r;
}

SuiteResult nash(const SuiteConfig& cfg) {
  const auto m = measure_of(cfg);
  const auto& grid = grid_of_size(cfg.grid);
  const auto opt = options_of(cfg);
  const auto X = parse_space(cfg.space.value_or("lp:2"));
  NashVariant variant;
  if (cfg.measure == "cauchy") variant = CauchyNash{cfg.alpha, cfg.q.value_or(4.0)};
  else if (cfg.measure == "subexp") variant = SubExpNash{subexp_p(cfg), cfg.beta};
  else throw UsageError("nash: --measure must be cauchy or subexp");
  const auto fam = extremal_family(m, grid);

  SuiteResult r;
  auto c = check_family(fam, [&](const TestFunction& f) { return check_nash(f, X, variant, opt); });
  finish_family(c, "extremal family");
  r.certificates.push_back(std::move(c));
  return r;
}

SuiteResult sharpness(const SuiteConfig& cfg) {
  SharpnessSetup setup;
  setup.prop = cfg.prop;
  setup.q = cfg.q.value_or(1.0);
  if (cfg.prop == "5.2") {
    setup.p = cfg.r.value_or(1.0);
    setup.alpha = subexp_p(cfg);
  } else {
    setup.p = cfg.p.value_or(1.0);
    setup.alpha = cfg.alpha;
  }
  if (cfg.prop != "5.1" && cfg.prop != "5.2") throw UsageError("--prop must be 5.1 or 5.2");
  const auto opt = options_of(cfg);
  std::vector<int> ks(10);
  for (int k = 1; k <= 10; ++k) ks[static_cast<std::size_t>(k - 1)] = k;

  const auto base = sharpness_scan(setup, 0.0, ks, opt);
  const auto pert = sharpness_scan(setup, cfg.delta, ks, opt);

  SuiteResult r;
  std::ostringstream t;
  t << "k,ratio_base,ratio_delta\n";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    t << ks[i] << "," << format_number(base[i].sup_ratio) << "," << format_number(pert[i].sup_ratio) << "\n";
  }
  t << "# target " << sharpness_target(setup, 0.0).name() << " spread " << format_number(sweep_spread(base))
    << "\n";
  t << "# target " << sharpness_target(setup, cfg.delta).name() << " growth k=10/k=1 "
    << format_number(sweep_growth(pert)) << "\n";
  r.table = t.str();
  r.certificates = base;
  r.certificates.insert(r.certificates.end(), pert.begin(), pert.end());
  return r;
}

SuiteResult gaussian_concave(const SuiteConfig& cfg) {
  const auto m = make_product(make_gaussian(), 1);
  const auto opt = options_of(cfg);
  std::vector<TestFunction> fam{coordinate(m)};
  const auto bumps = gaussian_bumps(m, 8, cfg.seed);
  fam.insert(fam.end(), bumps.begin(), bumps.end());
  SuiteResult r;
  auto c = check_family(fam, [&](const TestFunction& f) { return check_concave_gaussian(f, opt); });
  finish_family(c, "x1 and bumps");
  c.params["seed"] = static_cast<double>(cfg.seed);
  r.certificates.push_back(std::move(c));
  return r;
}

std::string quote(const std::string& s) { return csv_escape(s); }

}  // namespace

void apply_setting(SuiteConfig& c, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "suite") c.suite = v;
  else if (key == "measure") {
    if (v != "cauchy" && v != "subexp" && v != "gaussian") {
      throw UsageError("--measure must be cauchy, subexp or gaussian");
    }
    c.measure = v;
  } else if (key == "estimator") {
    if (!v.empty() && v != "cauchy" && v != "subexp" && v != "negdim" && v != "gaussian" && v != "exact") {
      throw UsageError("--estimator must be cauchy, subexp, negdim, gaussian or exact");
    }
    c.estimator = v;
  } else if (key == "alpha") c.alpha = parse_real(key, v);
  else if (key == "p") c.p = parse_real(key, v);
  else if (key == "bigN") c.bigN = parse_real(key, v);
  else if (key == "dim") c.dim = static_cast<int>(parse_integer(key, v));
  else if (key == "c") c.c = parse_real(key, v);
  else if (key == "space") {
    parse_space(v);
    c.space = v;
  } else if (key == "grid") {
    const auto n = parse_integer(key, v);
    if (n < 0) throw UsageError("--grid must be positive");
    c.grid = static_cast<std::size_t>(n);
  } else if (key == "tol-quad") c.tol_quad = parse_real(key, v);
  else if (key == "tol-assert") c.tol_assert = parse_real(key, v);
  else if (key == "seed") {
    const auto n = parse_integer(key, v);
    if (n < 0) throw UsageError("--seed must be nonnegative");
    c.seed = static_cast<std::uint64_t>(n);
  } else if (key == "out") c.out = v;
  else if (key == "format") {
    if (v != "json" && v != "csv" && !v.empty()) throw UsageError("--format must be json or csv");
    c.format = v;
  } else if (key == "prop") c.prop = v;
  else if (key == "q") c.q = parse_real(key, v);
  else if (key == "r") c.r = parse_real(key, v);
  else if (key == "delta") c.delta = parse_real(key, v);
  else if (key == "beta") c.beta = parse_real(key, v);
  else if (key == "r-refine") c.r_refine = static_cast<int>(parse_integer(key, v));
  else throw UsageError("unknown setting '" + key + "'");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(number) + ": expected key=value");
    }
    out[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
  }
  return out;
}

void validate(const SuiteConfig& c) {
  if (!valid_grid_size(c.grid)) throw UsageError("--grid must be a power of two >= 64");
  if (!(c.tol_quad > 0.0) || !(c.tol_assert > 0.0)) throw UsageError("tolerances must be positive");
  if (c.dim < 1) throw UsageError("--dim must be at least 1");
  if (!(c.alpha > 0.0)) throw UsageError("--alpha must be positive");
  if (c.r_refine < 1) throw UsageError("--r-refine must be at least 1");
  if (c.c && !(*c.c > 0.0)) throw UsageError("--c must be positive");
}

RISpace parse_space(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) {
    throw UsageError("space descriptor '" + descriptor + "' must look like lp:p, lorentz:p,q or lz:p,q,a");
  }
  const std::string kind = descriptor.substr(0, colon);
  std::vector<double> args;
  std::stringstream ss(descriptor.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) args.push_back(parse_real("space", item));
  try {
    if (kind == "lp" && args.size() == 1) return RISpace::lp(args[0]);
    if (kind == "lorentz" && args.size() == 2) return RISpace::lorentz(args[0], args[1]);
    if (kind == "lz" && args.size() == 3) return RISpace::lorentz_zygmund(args[0], args[1], args[2]);
  } catch (const DomainError& e) {
    throw UsageError("space descriptor '" + descriptor + "': " + e.what());
  }
  throw UsageError("space descriptor '" + descriptor + "' must look like lp:p, lorentz:p,q or lz:p,q,a");
}

ProductMeasure measure_of(const SuiteConfig& c) {
  try {
    if (c.measure == "cauchy") return make_product(make_cauchy(c.alpha), c.dim);
    if (c.measure == "subexp") return make_product(make_subexp(subexp_p(c)), c.dim);
    if (c.measure == "gaussian") return make_product(make_gaussian(), c.dim);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown measure '" + c.measure + "'");
}

ConvexEstimator estimator_of(const SuiteConfig& c) {
  const double k = c.c.value_or(1.0);
  const std::string fam = c.estimator.empty() ? c.measure : c.estimator;
  EstimatorParams p;
  p.alpha = c.alpha;
  p.p = subexp_p(c);
  p.bigN = c.bigN;
  p.dimension = c.dim;
  try {
    if (fam == "exact") return exact_estimator(measure_of(c).base, k);
    if (fam == "cauchy") return make_estimator(EstimatorFamily::CauchyAlpha, p, k);
    if (fam == "subexp") return make_estimator(EstimatorFamily::SubExpP, p, k);
    if (fam == "negdim") return make_estimator(EstimatorFamily::NegDimN, p, k);
    if (fam == "gaussian") return make_estimator(EstimatorFamily::GaussianConcave, p, k);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown estimator '" + fam + "'");
}

std::vector<TestFunction> extremal_family(const ProductMeasure& m, const GradedGrid& grid) {
  std::vector<TestFunction> out;
  for (double b : {1.0, 1.5, 2.0, 3.0, 4.0}) {
    for (int j = 1; j <= 4; ++j) {
      const double a = std::exp2(-j);
      Profile f;
      f.fn = [a, b](double t) { return t < a ? std::pow(t, b) : 0.0; };
      f.derivative = [a, b](double t) { return t < a ? b * std::pow(t, b - 1.0) : 0.0; };
      f.breaks = {a};
      f.left_limit = 0.0;
      f.right_limit = 0.0;
      out.push_back(extremal(f, m, grid).with_label("t^" + format_number(b) + " chi(0,2^-" +
                                                    std::to_string(j) + ")"));
    }
  }
  out.push_back(transfer(TransferProfile::ramp_down(0.5), m).with_label("(1/2-t)+"));
  return out;
}

int exit_code_for(const std::vector<RatioCertificate>& certs) {
  int worst = 0;
  for (const auto& c : certs) worst = std::max(worst, severity(c.status));
  if (worst >= 3) return 1;
  if (worst == 2) return 2;
  return 0;
}

SuiteResult run_suite(const SuiteConfig& config) {
  validate(config);
  SuiteResult r;
  const auto& s = config.suite;
  if (s == "theorem32") r = theorem32(config);
  else if (s == "poincare") r = poincare(config);
  else if (s == "nash") r = nash(config);
  else if (s == "sharpness") r = sharpness(config);
  else if (s == "gaussian-concave") r = gaussian_concave(config);
  else if (s == "all") {
    for (const auto& part : {"theorem32", "poincare", "nash", "sharpness", "gaussian-concave"}) {
      SuiteConfig sub = config;
      sub.suite = part;
      if (sub.suite == "nash" && config.measure == "gaussian") continue;
      auto x = run_suite(sub);
      r.certificates.insert(r.certificates.end(), x.certificates.begin(), x.certificates.end());
      r.table += x.table;
    }
  } else {
    throw UsageError("unknown suite '" + s +
                     "' (expected theorem32, poincare, nash, sharpness, gaussian-concave or all)");
  }
  r.exit_code = exit_code_for(r.certificates);
  if (!config.out.empty()) write_outputs(r.certificates, config.out);
  return r;
}

void write_outputs(const std::vector<RatioCertificate>& certs, const std::string& out) {
  const std::filesystem::path base(out);
  if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : certs) arr.push_back(to_json(c));
  std::ofstream js(out + ".json", std::ios::binary);
  js << arr.dump(2) << "\n";
  std::ofstream csv(out + ".csv", std::ios::binary);
  csv << to_csv(certs);
  if (!js || !csv) throw Error("cannot write outputs under " + out);
}

std::string summary_table(const std::vector<RatioCertificate>& certs) {
  std::string out = "inequality_id,params,sup_ratio,status\n";
  for (const auto& c : certs) {
    out += quote(c.inequality_id) + "," + quote(params_string(c.params)) + "," + format_number(c.sup_ratio) +
           "," + to_string(c.status) + "\n";
  }
  return out;
}

std::vector<RatioCertificate> load_certificates(const std::vector<std::string>& paths) {
  std::vector<RatioCertificate> out;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      const auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
      const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
      throw ParseError(path + ":" + std::to_string(line) + ": " + e.what());
    }
    const auto items = j.is_array() ? j : nlohmann::json::array({j});
    for (std::size_t i = 0; i < items.size(); ++i) {
      try {
        out.push_back(certificate_from_json(items[i]));
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": certificate " + std::to_string(i) + ": " + e.what());
      } catch (const ParseError& e) {
        throw ParseError(path + ": certificate " + std::to_string(i) + ": " + e.what());
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const RatioCertificate& a, const RatioCertificate& b) {
    return a.inequality_id < b.inequality_id;
  });
  return out;
}

}  // namespace isosym
