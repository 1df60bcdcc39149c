#include "spw/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "spw/acceptance.hpp"
#include "spw/catalog.hpp"
#include "spw/error.hpp"
#include "spw/indicator.hpp"
#include "spw/laplace.hpp"
#include "spw/probe.hpp"

namespace spw::cli {

namespace {

/// CSV writer: comma separated, 17 significant digits, LF line endings.
class Csv {
 public:
  explicit Csv(std::ostream& out) : out_(out) { out_.precision(17); }

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << fields, first = false), ...);
    out_ << '\n';
  }

  void comment(const std::string& text) { out_ << "# " << text << '\n'; }

 private:
  std::ostream& out_;
};

std::string quoted(const std::string& text) {
  std::string s = "\"";
  for (char c : text) {
    if (c == '"') s += '"';
    s += c;
  }
  return s + "\"";
}

bool skippable(const Error& e) {
  return e.kind() == ErrorKind::OutsideDomain || e.kind() == ErrorKind::OutsideUnion ||
         e.kind() == ErrorKind::OutsideSector || e.kind() == ErrorKind::AngularMarginTooSmall ||
         e.kind() == ErrorKind::EvaluationUnderflow || e.kind() == ErrorKind::BudgetExceeded;
}

std::vector<double> theta_list(const ExperimentConfig& config, double alpha) {
  if (!config.thetas.empty()) return config.thetas;
  if (config.theta_grid < 1) throw Error(ErrorKind::ConfigError, "theta-grid must be positive");
  if (config.theta_grid == 1) return {0.0};
  std::vector<double> thetas;
  for (int k = 0; k < config.theta_grid; ++k) thetas.push_back(-alpha + 2.0 * alpha * k / (config.theta_grid - 1));
  return thetas;
}

TransformOptions transform_options(const ExperimentConfig& config) {
  return {config.min_margin, IndicatorSource::Oracle};
}

/// Writes the buffered command output to --out, or to `out` when unset.
void emit(const ExperimentConfig& config, const std::string& text, std::ostream& out) {
  if (config.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw Error(ErrorKind::ConfigError, "cannot open output file '" + config.out + "'");
  file << text;
}

}  // namespace

Experiment resolve(const ExperimentConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha < std::numbers::pi / 2)) {
    std::ostringstream msg;
    msg << "requires 0 < alpha < pi/2, got alpha=" << config.alpha;
    throw Error(ErrorKind::ConfigError, msg.str());
  }
  if (!(config.epsilon > 0.0)) throw Error(ErrorKind::ConfigError, "requires epsilon > 0");
  if (!(config.min_margin > 0.0)) throw Error(ErrorKind::ConfigError, "requires delta-min > 0");
  if (!(config.angular_margin > 0.0)) throw Error(ErrorKind::ConfigError, "requires angular-margin > 0");
  config.budget.validate();

  TestFunction fn = parse_function(config.fn, config.alpha);
  if (config.h) {
    if (!(*config.h >= fn.spec.h)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "h=" << *config.h << " is below the exponential type " << fn.spec.h << " of " << fn.id
          << " on the sector of half-angle " << fn.spec.alpha;
      throw Error(ErrorKind::ConfigError, msg.str());
    }
    fn.spec = SectorSpec::make(fn.spec.alpha, *config.h);
  }
  const double p = config.p.value_or(-(fn.spec.h + 1.0) / std::cos(fn.spec.alpha));
  return {fn, build_gamma(fn.spec, p)};
}

int cmd_transform(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const Experiment ex = resolve(config);
  if (config.omegas.empty()) throw Error(ErrorKind::ConfigError, "transform needs at least one --omega");
  std::ostringstream buffer;
  Csv csv(buffer);
  csv.row("theta", "omega_re", "omega_im", "g_re", "g_im", "est_error");

  const TransformOptions options = transform_options(config);
  const ConcatenatedTransform concatenated(ex.fn, options);
  auto one = [&](std::optional<double> theta, cplx omega) {
    try {
      const double t = theta ? *theta : concatenated.select_direction(omega);
      const IntegralResult r = directional_transform(ex.fn, {t, omega, config.budget}, options);
      csv.row(t, omega.real(), omega.imag(), r.value.real(), r.value.imag(), r.est_error);
    } catch (const Error& e) {
      if (!config.skip_invalid || !skippable(e)) throw;
      err << "skipped omega=" << omega << ": " << e.what() << '\n';
    }
  };
  for (const cplx omega : config.omegas) {
    if (config.thetas.empty()) {
      one(std::nullopt, omega);
    } else {
      for (const double theta : config.thetas) one(theta, omega);
    }
  }
  emit(config, buffer.str(), out);
  return kExitOk;
}

int cmd_invert(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const Experiment ex = resolve(config);
  const std::vector<cplx> zs = config.zs.empty() ? default_z_grid(ex.fn.spec.alpha) : config.zs;
  InversionOptions options;
  options.g_source = config.g_source;
  options.angular_margin = config.angular_margin;
  options.transform = transform_options(config);

  std::ostringstream buffer;
  Csv csv(buffer);
  csv.row("z_re", "z_im", "value_re", "value_im", "est_error", "f_re", "f_im", "abs_residual");
  for (const cplx z : zs) {
    try {
      const IntegralResult r = reconstruct(ex.fn, ex.gamma, {z, config.budget}, options);
      const cplx f = ex.fn.eval(z);
      csv.row(z.real(), z.imag(), r.value.real(), r.value.imag(), r.est_error, f.real(), f.imag(),
              std::abs(f - r.value));
    } catch (const Error& e) {
      if (!config.skip_invalid || !skippable(e)) throw;
      err << "skipped z=" << z << ": " << e.what() << '\n';
    }
  }
  emit(config, buffer.str(), out);
  return kExitOk;
}

int cmd_roundtrip(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const Experiment ex = resolve(config);
  const std::vector<cplx> zs = config.zs.empty() ? default_z_grid(ex.fn.spec.alpha) : config.zs;
  InversionOptions options;
  options.g_source = config.g_source;
  options.angular_margin = config.angular_margin;
  options.transform = transform_options(config);
  const double threshold = config.threshold.value_or(config.g_source == GSource::Oracle ? 1e-6 : 1e-4);

  const RoundtripReport report = roundtrip_report(ex.fn, ex.gamma, zs, config.budget, options);
  std::ostringstream buffer;
  Csv csv(buffer);
  csv.row("z_re", "z_im", "f_re", "f_im", "rec_re", "rec_im", "abs_residual", "rel_residual", "est_error",
          "status");
  for (const RoundtripRow& row : report.rows) {
    csv.row(row.z.real(), row.z.imag(), row.exact.real(), row.exact.imag(), row.reconstructed.real(),
            row.reconstructed.imag(), row.abs_residual, row.rel_residual, row.est_error,
            row.error.empty() ? std::string("ok") : quoted(row.error));
  }
  std::ostringstream summary;
  summary.precision(17);
  summary << "summary max_rel=" << report.max_rel << " median_rel=" << report.median_rel
          << " threshold=" << threshold << " failures=" << report.failures;
  csv.comment(summary.str());
  emit(config, buffer.str(), out);

  if (report.max_rel <= threshold) return kExitOk;
  err << "round trip residual " << report.max_rel << " exceeds threshold " << threshold << '\n';
  return kExitNumeric;
}

int cmd_indicator(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const Experiment ex = resolve(config);
  const std::vector<double> grid = geometric_grid(config.s_min, config.s_max, config.s_points);
  std::ostringstream buffer;
  Csv csv(buffer);
  csv.row("theta", "estimate", "oracle", "ci_width", "s_max");
  for (const double theta : theta_list(config, ex.fn.spec.alpha)) {
    try {
      const IndicatorEstimate e = estimate_indicator(ex.fn, theta, grid, config.window);
      std::ostringstream oracle;
      oracle.precision(17);
      if (ex.fn.indicator_oracle) oracle << std::max(ex.fn.indicator_oracle(theta), kIndicatorFloor);
      csv.row(theta, e.value, oracle.str(), e.ci_width, e.s_max);
    } catch (const Error& e) {
      if (!config.skip_invalid || !skippable(e)) throw;
      err << "skipped theta=" << theta << ": " << e.what() << '\n';
    }
  }
  emit(config, buffer.str(), out);
  return kExitOk;
}

int cmd_probe(const ExperimentConfig& config, std::ostream& out, std::ostream&) {
  const Experiment ex = resolve(config);
  ProbeOptions options;
  options.radius.degree = config.degree;
  options.radius.g_source = ex.fn.transform_oracle ? config.g_source : GSource::Numeric;
  options.radius.transform = transform_options(config);
  options.blowup.g_source = config.g_source;

  std::ostringstream buffer;
  Csv csv(buffer);
  csv.row("theta", "boundary_re", "boundary_im", "blowup_exponent", "radius_estimate", "predicted_distance",
          "j1_slope", "j2_slope", "j3_slope", "inf_re", "notes");
  const std::vector<double> thetas = config.thetas.empty() ? std::vector<double>{0.0} : config.thetas;
  for (const double theta : thetas) {
    const ProbeReport r = run_probe(ex.fn, theta, config.budget, options);
    std::string notes;
    for (const std::string& n : r.notes) notes += (notes.empty() ? "" : " | ") + n;
    csv.row(r.theta, r.boundary_point.real(), r.boundary_point.imag(), r.blowup_exponent, r.radius_estimate,
            r.predicted_distance, r.j_slopes[0], r.j_slopes[1], r.j_slopes[2], r.inf_re, quoted(notes));
  }
  emit(config, buffer.str(), out);
  return kExitOk;
}

int cmd_selftest(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  const std::vector<CriterionResult> results = run_acceptance(buffer);
  const bool ok = all_passed(results);
  buffer << (ok ? "selftest passed" : "selftest FAILED") << '\n';
  emit(config, buffer.str(), out);
  if (!ok) err << "one or more acceptance criteria failed\n";
  return ok ? kExitOk : kExitNumeric;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Directional and concatenated Laplace transforms on a sector, inversion over the contour Gamma", "spw"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "Flat key=value file; flags given on the command line take precedence");
  app.require_subcommand(1, 1);

  ExperimentConfig config;
  std::optional<double> h, p, threshold;
  std::vector<std::string> omegas, zs;
  std::string g_source = "oracle";

  app.add_option("--fn", config.fn, "Catalog entry, e.g. exp:a=-1, zero, rational, trig, sum:c0=1,a0=-1");
  app.add_option("--alpha", config.alpha, "Sector half-angle in radians, 0 < alpha < pi/2");
  app.add_option("--h", h, "Exponential type (defaults to the entry's type on the sector)");
  app.add_option("--p", p, "Apex of Gamma; must satisfy p·cos(alpha) < -h");
  app.add_option("--epsilon", config.epsilon, "Growth slack epsilon");
  app.add_option("--rel-tol", config.budget.rel_tol, "Relative quadrature tolerance");
  app.add_option("--abs-floor", config.budget.abs_floor, "Absolute quadrature error floor");
  app.add_option("--max-panels", config.budget.max_panels, "Panel limit per integral");
  app.add_option("--panel-order", config.budget.panel_order, "Gauss-Legendre nodes per panel");
  app.add_option("--delta-min", config.min_margin, "Smallest admissible margin of omega inside Omega_theta");
  app.add_option("--angular-margin", config.angular_margin, "Required angular distance of z to the sector boundary");
  app.add_option("--g-source", g_source, "Transform used for inversion and probing")
      ->check(CLI::IsMember({"oracle", "numeric"}));
  app.add_option("--theta", config.thetas, "Directions (radians)");
  app.add_option("--theta-grid", config.theta_grid, "Number of equispaced directions on [-alpha, alpha]");
  app.add_option("--omega", omegas, "Transform arguments as re+imi (use --omega=-1+2i for a leading minus)");
  app.add_option("--z", zs, "Reconstruction points as re+imi");
  app.add_option("--s-min", config.s_min, "Smallest radius of the indicator grid");
  app.add_option("--s-max", config.s_max, "Largest radius of the indicator grid");
  app.add_option("--s-points", config.s_points, "Number of indicator radii");
  app.add_option("--window", config.window, "Indicator averaging window");
  app.add_option("--degree", config.degree, "Taylor degree of the radius scan");
  app.add_option("--threshold", threshold, "Round-trip pass threshold on the max relative residual");
  app.add_flag("--skip-invalid", config.skip_invalid, "Skip points outside the admissible domain");
  app.add_option("--out", config.out, "Write CSV here instead of stdout");

  using Command = int (*)(const ExperimentConfig&, std::ostream&, std::ostream&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"transform", "Directional (with --theta) or concatenated transform at --omega points", cmd_transform},
      {"invert", "Reconstruct f at --z points by integrating over Gamma", cmd_invert},
      {"roundtrip", "Round-trip residuals f -> g -> f on a z grid", cmd_roundtrip},
      {"indicator", "Estimate the indicator along a theta grid", cmd_indicator},
      {"probe", "Blow-up, radius and deformed-contour diagnostics at the boundary of Omega_theta", cmd_probe},
      {"selftest", "Run the acceptance suite", cmd_selftest},
  };
  for (const auto& [name, help, fn] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    config.h = h;
    config.p = p;
    config.threshold = threshold;
    config.g_source = g_source == "numeric" ? GSource::Numeric : GSource::Oracle;
    for (const std::string& s : omegas) config.omegas.push_back(parse_complex(s));
    for (const std::string& s : zs) config.zs.push_back(parse_complex(s));
    for (const auto& [name, help, fn] : commands) {
      if (app.got_subcommand(name)) return fn(config, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e.kind()) ? kExitConfig : kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitConfig;
}

}  // namespace spw::cli
