#include "spw/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "spw/error.hpp"
#include "spw/indicator.hpp"

namespace spw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEps = std::numeric_limits<double>::epsilon();

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxy / sxx;
}

IndicatorSource indicator_source_for(const TestFunction& fn) {
  return fn.indicator_oracle ? IndicatorSource::Oracle : IndicatorSource::Numeric;
}

// Golden-section maximization of f on [lo, hi].
template <typename F>
double golden_max(F&& f, double lo, double hi, int iterations) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < iterations; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BoundaryEvaluator::BoundaryEvaluator(const TestFunction& fn, double theta, GSource source,
                                     const QuadratureBudget& budget, double min_margin)
    : fn_(fn),
      theta_(theta),
      use_oracle_(source == GSource::Oracle && static_cast<bool>(fn.transform_oracle)),
      budget_(budget),
      options_{min_margin, indicator_source_for(fn)} {}

cplx BoundaryEvaluator::operator()(cplx omega) const {
  if (use_oracle_) return fn_.transform_oracle(theta_, omega);
  return directional_transform(fn_, {theta_, omega, budget_}, options_).value;
}

BlowupResult blowup_scan(const TestFunction& fn, double theta, const BlowupOptions& options) {
  if (!(std::abs(theta) <= fn.spec.alpha)) {
    throw Error(ErrorKind::OutsideSector, "probe direction must satisfy |theta| <= alpha");
  }
  if (options.sweep_points < 3 || options.delta_grid.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "blowup scan needs >= 3 sweep points and >= 2 offsets");
  }
  const HalfPlane hp = omega_theta(fn, theta, indicator_source_for(fn));
  if (hp.offset >= -kIndicatorFloor) {
    throw Error(ErrorKind::NoBlowupDetected, fn.id + ": Omega_theta is the whole plane (f vanishes)");
  }

  std::vector<double> deltas = options.delta_grid;
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  const BoundaryEvaluator g(fn, theta, options.g_source, options.budget, 0.5 * deltas.back());
  const cplx base = hp.nearest_boundary_point();
  const cplx along = hp.boundary_direction();
  const cplx inward = hp.inward_normal();
  auto magnitude = [&](double s, double delta) { return std::abs(g(base + s * along + delta * inward)); };

  // Ray integrals slow down like 1/delta; drop the offsets the budget cannot reach.
  const bool oracle = options.g_source == GSource::Oracle && static_cast<bool>(fn.transform_oracle);
  for (std::size_t k = 0; !oracle && k < deltas.size(); ++k) {
    try {
      magnitude(0.5 * options.window, deltas[k]);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded || k < 2) throw;
      deltas.resize(k);
    }
  }
  const double delta_min = deltas.back();

  const int n = options.sweep_points;
  std::vector<double> sweep(n);
  int best = 0;
  double best_value = -1.0;
  for (int k = 0; k < n; ++k) {
    sweep[k] = -0.5 * options.window + options.window * k / (n - 1);
    const double v = magnitude(sweep[k], delta_min);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  if (!(best_value > 0.0)) {
    throw Error(ErrorKind::NoBlowupDetected, fn.id + ": g vanishes along the boundary sweep");
  }

  const double lo = sweep[std::max(best - 1, 0)];
  const double hi = sweep[std::min(best + 1, n - 1)];
  const double s_star = golden_max([&](double s) { return magnitude(s, delta_min); }, lo, hi, 80);

  std::vector<double> log_delta, log_g;
  for (const double d : deltas) {
    log_delta.push_back(std::log(d));
    log_g.push_back(std::log(magnitude(s_star, d)));
  }
  const double exponent = least_squares_slope(log_delta, log_g);
  const cplx point = base + s_star * along;
  if (!(exponent < -0.5)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << fn.id << ": |g| stays bounded toward the boundary (best growth exponent " << exponent << " near "
        << point << ")";
    throw Error(ErrorKind::NoBlowupDetected, msg.str());
  }
  return {theta, point, exponent, magnitude(s_star, delta_min)};
}

RadiusReport radius_scan(const TestFunction& fn, cplx center, const QuadratureBudget& budget,
                         const RadiusOptions& options) {
  if (options.degree < 4) throw Error(ErrorKind::InvalidArgument, "radius scan needs degree >= 4");
  const bool oracle = options.g_source == GSource::Oracle;
  if (oracle && !fn.transform_oracle) {
    throw Error(ErrorKind::InvalidArgument, fn.id + " has no closed-form transform; use numeric g");
  }
  TransformOptions transform = options.transform;
  if (!fn.indicator_oracle) transform.source = IndicatorSource::Numeric;
  const ConcatenatedTransform ct(fn, transform);
  const double theta = ct.select_direction(center);
  const double margin = ct.margin(theta, center);
  const double rho = options.circle_fraction * margin;
  if (!(options.circle_fraction > 0.0) || !(margin - rho >= transform.min_margin)) {
    throw Error(ErrorKind::OutsideDomain, "sampling circle leaves the admissible part of Omega_theta");
  }

  const int N = options.degree;
  const int M = std::max(64, 4 * N);
  std::vector<cplx> values(M);
  double noise = 0.0;
  double gmax = 0.0;
  for (int k = 0; k < M; ++k) {
    const cplx omega = center + std::polar(rho, 2.0 * std::numbers::pi * k / M);
    if (oracle) {
      values[k] = fn.transform_oracle(theta, omega);
    } else {
      const IntegralResult r = ct(omega, budget);
      values[k] = r.value;
      noise = std::max(noise, r.est_error);
    }
    gmax = std::max(gmax, std::abs(values[k]));
  }
  if (gmax == 0.0) throw Error(ErrorKind::IllConditioned, fn.id + ": g vanishes on the sampling circle");
  noise = std::max(noise, 1e3 * kEps * gmax);

  RadiusReport report{center, theta, rho, kNaN, kNaN, {}};
  std::vector<double> scaled(N + 1);
  for (int n = 0; n <= N; ++n) {
    cplx c{};
    for (int k = 0; k < M; ++k) c += values[k] * std::polar(1.0, -2.0 * std::numbers::pi * k * n / M);
    c /= static_cast<double>(M);
    scaled[n] = std::abs(c);
    report.coefficients.push_back(c / std::pow(rho, n));
  }

  std::vector<double> ns, logs;
  for (int n = N / 2; n <= N; ++n) {
    if (scaled[n] <= 10.0 * noise) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "Taylor coefficient " << n << " (" << scaled[n] << " on the circle) is at the noise level " << noise;
      throw Error(ErrorKind::IllConditioned, msg.str());
    }
    ns.push_back(n);
    logs.push_back(std::log(scaled[n]));
  }
  // ln|c_n rho^n| ~ const + n ln(rho / R)
  report.radius_estimate = rho * std::exp(-least_squares_slope(ns, logs));

  double predicted = margin;
  if (!fn.singularities_of_g.empty()) {
    predicted = std::numeric_limits<double>::infinity();
    for (const cplx s : fn.singularities_of_g) predicted = std::min(predicted, std::abs(center - s));
  }
  report.predicted_distance = predicted;
  return report;
}

JDiagnostics gamma_prime_diagnostics(const TestFunction& fn, double theta, cplx q, cplx r,
                                     std::span<const double> s_grid, const QuadratureBudget& budget) {
  if (!fn.transform_oracle) {
    throw Error(ErrorKind::InvalidArgument, fn.id + ": J diagnostics need a closed-form transform");
  }
  const double alpha = fn.spec.alpha;
  if (!(std::abs(theta) < alpha)) throw Error(ErrorKind::OutsideSector, "J diagnostics need |theta| < alpha");
  if (s_grid.size() < 4) throw Error(ErrorKind::InvalidArgument, "J diagnostics need at least 4 values of s");

  const cplx rot = std::polar(1.0, theta);
  const cplx i(0.0, 1.0);
  const cplx out_r = i * std::polar(1.0, -alpha);
  const cplx out_q = -i * std::polar(1.0, alpha);
  auto re = [&](cplx w) { return (w * rot).real(); };
  auto gabs = [&](cplx w) { return std::abs(fn.transform_oracle(theta, w)); };

  JDiagnostics out;
  out.s_grid.assign(s_grid.begin(), s_grid.end());
  out.inf_re = std::min(re(q), re(r));

  auto sup_on_ray = [&](cplx start, cplx dir) {
    double m = gabs(start);
    for (const double u : geometric_grid(1e-3, 1e4, 200)) m = std::max(m, gabs(start + u * dir));
    return 2.0 * m;
  };
  const double sup_r = sup_on_ray(r, out_r);
  const double sup_q = sup_on_ray(q, out_q);
  const double len = std::abs(r - q);

  auto log_or_floor = [](double v, double shift) { return v > 0.0 ? std::log(v) + shift : kIndicatorFloor; };

  for (const double s : s_grid) {
    // integrals are scaled by e^{s inf_re} and unscaled in log space
    const auto seg = integrate_segment(
        [&](double tau) {
          const cplx w = q + tau * (r - q);
          return cplx(std::exp(-s * (re(w) - out.inf_re)) * gabs(w) * len, 0.0);
        },
        0.0, 1.0, budget, 4.0 / (1.0 + s * len));

    auto ray_piece = [&](cplx start, cplx dir, double sup) {
      const double rate = s * re(dir);
      const double lift = std::exp(-s * (re(start) - out.inf_re));
      const DecayModel decay{rate, lift * sup};
      return integrate_ray(
          [&](double u) { return cplx(lift * std::exp(-rate * u) * gabs(start + u * dir), 0.0); }, decay, budget);
    };
    const auto j2 = ray_piece(r, out_r, sup_r);
    const auto j3 = ray_piece(q, out_q, sup_q);
    const double shift = -s * out.inf_re;
    out.log_j.push_back({log_or_floor(seg.value.real(), shift), log_or_floor(j2.value.real(), shift),
                         log_or_floor(j3.value.real(), shift)});
  }

  const std::size_t start = out.s_grid.size() / 2;
  const std::span<const double> xs(out.s_grid.data() + start, out.s_grid.size() - start);
  for (int piece = 0; piece < 3; ++piece) {
    std::vector<double> ys;
    bool vanished = false;
    for (std::size_t k = start; k < out.log_j.size(); ++k) {
      ys.push_back(out.log_j[k][piece]);
      vanished = vanished || out.log_j[k][piece] <= kIndicatorFloor;
    }
    out.slopes[piece] = vanished ? kIndicatorFloor : least_squares_slope(xs, ys);
  }
  return out;
}

std::array<cplx, 2> default_gamma_prime(const HalfPlane& hp, double offset) {
  const cplx center = hp.nearest_boundary_point() - offset * hp.inward_normal();
  return {center - 2.0 * hp.boundary_direction(), center + 2.0 * hp.boundary_direction()};
}

ProbeReport run_probe(const TestFunction& fn, double theta, const QuadratureBudget& budget,
                      const ProbeOptions& options) {
  ProbeReport report{theta, {kNaN, kNaN}, kNaN, kNaN, kNaN, {kNaN, kNaN, kNaN}, kNaN, {}};
  const HalfPlane hp = omega_theta(fn, theta, indicator_source_for(fn));

  cplx anchor = hp.nearest_boundary_point();
  try {
    BlowupOptions blowup = options.blowup;
    blowup.budget = budget;
    const BlowupResult b = blowup_scan(fn, theta, blowup);
    report.boundary_point = b.singular_point;
    report.blowup_exponent = b.exponent;
    anchor = b.singular_point;
  } catch (const Error& e) {
    report.notes.emplace_back(e.what());
  }

  if (hp.offset < -kIndicatorFloor) {
    try {
      const RadiusReport r = radius_scan(fn, anchor + options.center_depth * hp.inward_normal(), budget,
                                         options.radius);
      report.radius_estimate = r.radius_estimate;
      report.predicted_distance = r.predicted_distance;
    } catch (const Error& e) {
      report.notes.emplace_back(e.what());
    }
  } else {
    report.notes.emplace_back("radius scan skipped: f vanishes, g is identically zero");
  }

  if (fn.transform_oracle && std::abs(theta) < fn.spec.alpha && hp.offset < -kIndicatorFloor) {
    try {
      std::vector<double> s_grid = options.s_grid;
      if (s_grid.empty()) {
        for (double s = 10.0; s <= 80.0; s += 5.0) s_grid.push_back(s);
      }
      const auto [q, r] = default_gamma_prime(hp);
      const JDiagnostics j = gamma_prime_diagnostics(fn, theta, q, r, s_grid, budget);
      report.j_slopes = j.slopes;
      report.inf_re = j.inf_re;
    } catch (const Error& e) {
      report.notes.emplace_back(e.what());
    }
  } else if (!fn.transform_oracle) {
    report.notes.emplace_back("J diagnostics skipped: no closed-form transform");
  } else if (!(hp.offset < -kIndicatorFloor)) {
    report.notes.emplace_back("J diagnostics skipped: g is identically zero");
  } else {
    report.notes.emplace_back("J diagnostics skipped: theta on the sector boundary");
  }
  return report;
}

}  // namespace spw
