#include "spw/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spw/error.hpp"

namespace spw {

namespace {

const cplx kTwoPiI(0.0, 2.0 * std::numbers::pi);

void validate_point(const TestFunction& fn, const ContourGamma& gamma, cplx z, double required_margin) {
  if (gamma.alpha() > fn.spec.alpha + 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "contour half-angle exceeds the sector of " + fn.id);
  }
  if (!(gamma.apex() * std::cos(gamma.alpha()) < -fn.spec.h)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "requires p·cos(alpha) < -h for " << fn.id << " (h=" << fn.spec.h << ")";
    throw Error(ErrorKind::InvalidApex, msg.str());
  }
  const SectorSpec sector{gamma.alpha(), fn.spec.h};
  if (!sector_contains(sector, z, false)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "z=" << z << " is not in the open sector |arg z| < " << gamma.alpha();
    throw Error(ErrorKind::OutsideSector, msg.str());
  }
  const double margin = spw::angular_margin(sector, z);
  if (margin < required_margin) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "z=" << z << " is " << margin << " rad from the sector boundary, below " << required_margin;
    throw Error(ErrorKind::AngularMarginTooSmall, msg.str());
  }
}

// Distance from z to the ray e^{i theta}[0, inf).
double distance_to_ray(cplx z, double theta) {
  const double along = (z * std::polar(1.0, -theta)).real();
  return along <= 0.0 ? std::abs(z) : std::abs((z * std::polar(1.0, -theta)).imag());
}

}  // namespace

LegIntegrals reconstruct_legs(const TestFunction& fn, const ContourGamma& gamma, const ReconstructionQuery& q,
                              const InversionOptions& options) {
  validate_point(fn, gamma, q.z, options.angular_margin);
  if (options.g_source == GSource::Oracle && !fn.transform_oracle) {
    throw Error(ErrorKind::InvalidArgument, fn.id + " has no closed-form transform; use numeric g");
  }

  const cplx z = q.z;
  const double p = gamma.apex();
  const double alpha = gamma.alpha();
  const double arg_z = principal_arg(z);
  const double scale = gamma_envelope(fn, gamma) * std::abs(std::exp(-p * z));

  const ConcatenatedTransform concatenated(fn, options.transform);
  const QuadratureBudget inner = q.budget.tightened(options.inner_tightening);

  auto leg_integral = [&](Leg leg) {
    const cplx out = gamma.outward(leg);
    // increasing t runs toward the apex on the lower leg
    const cplx velocity = leg == Leg::Lower ? -out : out;
    const double oracle_theta = leg == Leg::Lower ? -alpha : alpha;
    double inner_err = 0.0;

    auto integrand = [&](double u) {
      const cplx omega = gamma.leg_point(leg, u);
      cplx g;
      if (options.g_source == GSource::Oracle) {
        g = fn.transform_oracle(oracle_theta, omega);
      } else {
        const IntegralResult r = concatenated(omega, inner);
        inner_err = std::max(inner_err, r.est_error);
        g = r.value;
      }
      return g * std::exp(-omega * z) * velocity;
    };

    DecayModel decay;
    decay.rate = std::abs(z) * (leg == Leg::Lower ? std::sin(alpha + arg_z) : std::sin(alpha - arg_z));
    decay.amplitude = scale;
    decay.frequency = std::abs((out * z).imag());
    IntegralResult r = integrate_ray(integrand, decay, q.budget);
    // inner errors integrate against |e^{-omega z}|, whose leg integral is |e^{-pz}|/rate
    r.est_error += inner_err * std::abs(std::exp(-p * z)) / decay.rate;
    return r;
  };

  LegIntegrals legs;
  legs.lower = leg_integral(Leg::Lower);
  legs.upper = leg_integral(Leg::Upper);
  legs.total.value = legs.lower.value + legs.upper.value;
  legs.total.est_error = legs.lower.est_error + legs.upper.est_error;
  legs.total.truncation_T = std::max(legs.lower.truncation_T, legs.upper.truncation_T);
  legs.total.panels_used = legs.lower.panels_used + legs.upper.panels_used;
  return legs;
}

IntegralResult reconstruct(const TestFunction& fn, const ContourGamma& gamma, const ReconstructionQuery& q,
                           const InversionOptions& options) {
  return reconstruct_legs(fn, gamma, q, options).total;
}

IntegralResult fubini_swapped_leg(const TestFunction& fn, const ContourGamma& gamma, Leg leg,
                                  const ReconstructionQuery& q, const InversionOptions& options) {
  validate_point(fn, gamma, q.z, options.angular_margin);
  const cplx z = q.z;
  const double p = gamma.apex();
  const double alpha = gamma.alpha();
  const cplx out = gamma.outward(leg);
  // the lower leg pairs with the ray e^{-i alpha}[0, inf), the upper with e^{i alpha}[0, inf)
  const cplx ray = std::polar(1.0, leg == Leg::Lower ? -alpha : alpha);
  const cplx sign = leg == Leg::Lower ? -1.0 : 1.0;
  const QuadratureBudget inner = q.budget.tightened(options.inner_tightening);

  // Re(out (zeta - z)) does not depend on the position of zeta along its ray.
  const double inner_rate = (out * z).real();
  if (!(inner_rate > 0.0)) {
    throw Error(ErrorKind::InvalidDecay, "inner kernel does not decay along the leg");
  }
  double inner_err = 0.0;

  auto outer = [&](double t) {
    const cplx zeta = t * ray;
    DecayModel decay{inner_rate, std::abs(std::exp(p * (zeta - z))), std::abs((out * (zeta - z)).imag())};
    const IntegralResult kernel = integrate_ray(
        [&](double u) { return std::exp((p + u * out) * (zeta - z)) * out; }, decay, inner);
    inner_err = std::max(inner_err, kernel.est_error * std::abs(fn.eval(zeta)));
    return fn.eval(zeta) * kernel.value * ray * sign / kTwoPiI;
  };

  DecayModel decay;
  decay.rate = -fn.spec.h - p * std::cos(alpha);
  decay.amplitude = fn.envelope * std::abs(std::exp(-p * z)) / (2.0 * std::numbers::pi * inner_rate);
  decay.frequency = fn.frequency ? fn.frequency(leg == Leg::Lower ? -alpha : alpha) : 0.0;
  if (!(decay.rate > 0.0)) throw Error(ErrorKind::InvalidApex, "requires p·cos(alpha) < -h");
  IntegralResult r = integrate_ray(outer, decay, q.budget);
  r.est_error += inner_err / (2.0 * std::numbers::pi * decay.rate);
  return r;
}

std::vector<cplx> default_z_grid(double alpha) {
  std::vector<cplx> grid;
  for (const double radius : {0.5, 1.0, 2.0}) {
    for (const double angle : {-0.6 * alpha, 0.0, 0.6 * alpha}) grid.push_back(std::polar(radius, angle));
  }
  return grid;
}

RoundtripReport roundtrip_report(const TestFunction& fn, const ContourGamma& gamma, std::span<const cplx> z_grid,
                                 const QuadratureBudget& budget, const InversionOptions& options) {
  RoundtripReport report{{}, 0.0, 0.0, 0};
  std::vector<double> rels;
  for (const cplx z : z_grid) {
    RoundtripRow row{z, fn.eval(z), {}, 0.0, 0.0, 0.0, {}};
    try {
      const IntegralResult r = reconstruct(fn, gamma, {z, budget}, options);
      row.reconstructed = r.value;
      row.est_error = r.est_error;
      row.abs_residual = std::abs(row.exact - r.value);
      const double fz = std::abs(row.exact);
      row.rel_residual = fz > 0.0 ? row.abs_residual / fz : row.abs_residual;
      rels.push_back(row.rel_residual);
    } catch (const Error& e) {
      row.error = e.what();
      row.abs_residual = row.rel_residual = std::numeric_limits<double>::quiet_NaN();
      ++report.failures;
    }
    report.rows.push_back(row);
  }
  if (!rels.empty()) {
    std::sort(rels.begin(), rels.end());
    report.max_rel = rels.back();
    const std::size_t n = rels.size();
    report.median_rel = n % 2 ? rels[n / 2] : 0.5 * (rels[n / 2 - 1] + rels[n / 2]);
  }
  if (report.failures > 0) report.max_rel = std::numeric_limits<double>::infinity();
  return report;
}

CauchyPathReport cauchy_path_check(const TestFunction& fn, const ContourGamma& gamma, cplx z,
                                   const QuadratureBudget& budget, double angular_margin) {
  validate_point(fn, gamma, z, angular_margin);
  const double p = gamma.apex();
  const double alpha = gamma.alpha();
  const cplx shift = std::exp(-p * z);

  auto boundary_ray = [&](double theta) {
    const cplx dir = std::polar(1.0, theta);
    const double dist = distance_to_ray(z, theta);
    DecayModel decay;
    decay.rate = -fn.spec.h - p * std::cos(alpha);
    decay.amplitude = fn.envelope * std::abs(shift) / dist;
    decay.frequency = std::abs(p * dir.imag()) + (fn.frequency ? fn.frequency(theta) : 0.0);
    decay.feature_length = dist;
    return integrate_ray(
        [&](double t) {
          const cplx zeta = t * dir;
          return fn.eval_times_exp(zeta, p) * shift / (zeta - z) * dir;
        },
        decay, budget);
  };

  const IntegralResult lower = boundary_ray(-alpha);
  const IntegralResult upper = boundary_ray(alpha);
  const cplx boundary = lower.value - upper.value;
  const cplx lhs = kTwoPiI * fn.eval(z);
  return {std::abs(lhs - boundary), std::abs(lhs), lower.est_error + upper.est_error, boundary};
}

}  // namespace spw
