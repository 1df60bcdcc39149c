#include "spw/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spw/error.hpp"

namespace spw {

namespace {

const cplx kTwoPiI(0.0, 2.0 * std::numbers::pi);
constexpr int kDirectionGrid = 65;
constexpr int kGoldenIterations = 48;
// Rate multiplier applied when the indicator is estimated rather than known.
constexpr double kNumericHaircut = 0.9;

bool vanishes(const TestFunction& fn) {
  return fn.indicator_oracle && fn.indicator_oracle(0.0) <= kIndicatorFloor;
}

}  // namespace

IntegralResult directional_transform(const TestFunction& fn, const TransformQuery& q,
                                     const TransformOptions& options) {
  if (!(std::abs(q.theta) <= fn.spec.alpha + 1e-12)) {
    std::ostringstream msg;
    msg << "direction theta=" << q.theta << " is outside the closed sector of half-angle " << fn.spec.alpha;
    throw Error(ErrorKind::OutsideSector, msg.str());
  }
  const HalfPlane hp = omega_theta(fn, q.theta, options.source);
  const double margin = omega_margin(hp, q.omega);
  if (!(margin >= options.min_margin)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "omega=" << q.omega << " has margin " << margin << " to the boundary of Omega_theta (theta="
        << q.theta << "), below " << options.min_margin;
    throw Error(ErrorKind::OutsideDomain, msg.str());
  }

  const bool numeric = options.source == IndicatorSource::Numeric || !fn.indicator_oracle;
  const cplx dir = std::polar(1.0, q.theta);
  DecayModel decay;
  decay.rate = numeric ? kNumericHaircut * margin : margin;
  decay.amplitude = fn.envelope / (2.0 * std::numbers::pi);
  decay.frequency = std::abs((q.omega * dir).imag()) + (fn.frequency ? fn.frequency(q.theta) : 0.0);

  const cplx factor = dir / kTwoPiI;
  auto integrand = [&fn, dir, factor, omega = q.omega](double t) {
    return fn.eval_times_exp(t * dir, omega) * factor;
  };
  return integrate_ray(integrand, decay, q.budget);
}

ConcatenatedTransform::ConcatenatedTransform(TestFunction fn, TransformOptions options)
    : fn_(std::move(fn)), options_(options), vanishes_(vanishes(fn_)) {}

HalfPlane ConcatenatedTransform::halfplane(double theta) const {
  return omega_theta(fn_, theta, options_.source);
}

double ConcatenatedTransform::margin(double theta, cplx omega) const {
  return omega_margin(halfplane(theta), omega);
}

double ConcatenatedTransform::select_direction(cplx omega) const {
  if (vanishes_) return 0.0;

  const double alpha = fn_.spec.alpha;
  // Coarse scan first: the margin need not be unimodal on [-alpha, alpha].
  std::vector<double> thetas(kDirectionGrid);
  std::vector<double> margins(kDirectionGrid);
  std::size_t best = 0;
  for (int k = 0; k < kDirectionGrid; ++k) {
    thetas[k] = -alpha + 2.0 * alpha * k / (kDirectionGrid - 1);
    margins[k] = margin(thetas[k], omega);
    const double tie = 1e-12 * (1.0 + std::abs(margins[best]));
    if (margins[k] > margins[best] + tie ||
        (std::abs(margins[k] - margins[best]) <= tie && std::abs(thetas[k]) < std::abs(thetas[best]))) {
      best = k;
    }
  }

  double theta_star = thetas[best];
  double m_star = margins[best];

  // Golden-section refinement inside the bracket around the coarse maximizer.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = thetas[best == 0 ? 0 : best - 1];
  double hi = thetas[best + 1 == thetas.size() ? best : best + 1];
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = margin(x1, omega);
  double f2 = margin(x2, omega);
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = margin(x2, omega);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = margin(x1, omega);
    }
  }
  const double theta_gs = 0.5 * (lo + hi);
  const double m_gs = margin(theta_gs, omega);
  if (m_gs > m_star + 1e-12 * (1.0 + std::abs(m_star))) {
    theta_star = theta_gs;
    m_star = m_gs;
  }

  if (!(m_star >= options_.min_margin)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "omega=" << omega << " is not in the union of half-planes: best margin " << m_star
        << " at theta=" << theta_star << " is below " << options_.min_margin;
    throw Error(ErrorKind::OutsideUnion, msg.str());
  }
  return theta_star;
}

IntegralResult ConcatenatedTransform::operator()(cplx omega, const QuadratureBudget& budget) const {
  const double theta = select_direction(omega);
  return directional_transform(fn_, {theta, omega, budget}, options_);
}

double select_direction(const ConcatenatedTransform& ct, cplx omega) { return ct.select_direction(omega); }

IntegralResult concatenated_transform(const ConcatenatedTransform& ct, cplx omega,
                                      const QuadratureBudget& budget) {
  return ct(omega, budget);
}

ConsistencyReport consistency_residual(const TestFunction& fn, double theta1, double theta2, cplx omega,
                                       const QuadratureBudget& budget, const TransformOptions& options) {
  const IntegralResult g1 = directional_transform(fn, {theta1, omega, budget}, options);
  const IntegralResult g2 = directional_transform(fn, {theta2, omega, budget}, options);
  return {std::abs(g1.value - g2.value), g1.est_error + g2.est_error, g1, g2};
}

double unified_gamma_bound(const SectorSpec& spec, const GrowthCertificate& cert, const ContourGamma& gamma) {
  const double exponent = spec.h + cert.epsilon + gamma.apex() * std::cos(gamma.alpha());
  if (!(exponent < 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "requires h + epsilon + p·cos(alpha) < 0, got " << exponent;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  return -cert.c_epsilon / exponent;
}

double gamma_envelope(const TestFunction& fn, const ContourGamma& gamma) {
  const double decay = -fn.spec.h - gamma.apex() * std::cos(gamma.alpha());
  if (!(decay > 0.0)) {
    throw Error(ErrorKind::InvalidApex, "requires p·cos(alpha) < -h");
  }
  return fn.envelope / (2.0 * std::numbers::pi * decay);
}

GammaBoundReport gamma_bound_check(const TestFunction& fn, const GrowthCertificate& cert,
                                   const ContourGamma& gamma, int samples, const QuadratureBudget& budget,
                                   double t_max, const TransformOptions& options) {
  if (samples < 3) throw Error(ErrorKind::InvalidArgument, "gamma_bound_check needs at least 3 samples per leg");
  const double bound = unified_gamma_bound(fn.spec, cert, gamma);
  const ConcatenatedTransform g(fn, options);

  std::vector<double> ts{0.0};
  const std::vector<double> geo = geometric_grid(1e-3, t_max, samples - 1);
  ts.insert(ts.end(), geo.begin(), geo.end());

  GammaBoundReport report{-bound, bound, 0.0, gamma.apex()};
  for (const Leg leg : {Leg::Lower, Leg::Upper}) {
    for (const double t : ts) {
      const cplx omega = gamma.leg_point(leg, t);
      const double mag = std::abs(g(omega, budget).value);
      if (mag > report.max_abs_g) {
        report.max_abs_g = mag;
        report.worst_point = omega;
      }
    }
  }
  report.worst_excess = report.max_abs_g - bound;
  return report;
}

}  // namespace spw
