#include "spw/sector.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spw/error.hpp"

namespace spw {

SectorSpec SectorSpec::make(double alpha, double h) {
  if (!(alpha > 0.0 && alpha < std::numbers::pi / 2)) {
    std::ostringstream msg;
    msg << "requires 0 < alpha < pi/2, got alpha=" << alpha;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  if (!(h >= 0.0) || !std::isfinite(h)) {
    std::ostringstream msg;
    msg << "requires h >= 0, got h=" << h;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  return SectorSpec{alpha, h};
}

double principal_arg(cplx z) {
  // std::arg returns -pi for (-x, -0.0); fold onto the (-pi, pi] branch.
  double a = std::arg(z);
  return a == -std::numbers::pi ? std::numbers::pi : a;
}

bool sector_contains(const SectorSpec& spec, cplx z, bool closed) {
  if (z == cplx(0.0, 0.0)) return closed;
  const double a = principal_arg(z);
  return closed ? std::abs(a) <= spec.alpha : std::abs(a) < spec.alpha;
}

double angular_margin(const SectorSpec& spec, cplx z) {
  const double a = principal_arg(z);
  return std::min(spec.alpha - a, spec.alpha + a);
}

cplx ContourGamma::point(double t) const {
  return t <= 0.0 ? leg_point(Leg::Lower, -t) : leg_point(Leg::Upper, t);
}

cplx ContourGamma::tangent(double t) const {
  // lower leg is walked toward the apex, so its velocity is -outward
  return t <= 0.0 ? -outward(Leg::Lower) : outward(Leg::Upper);
}

cplx ContourGamma::outward(Leg leg) const {
  const cplx i(0.0, 1.0);
  return leg == Leg::Lower ? -i * std::polar(1.0, alpha_) : i * std::polar(1.0, -alpha_);
}

ContourGamma build_gamma(const SectorSpec& spec, double p) {
  if (!std::isfinite(p) || !(p * std::cos(spec.alpha) < -spec.h)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "requires p·cos(alpha) < -h (p=" << p << ", alpha=" << spec.alpha
        << ", h=" << spec.h << ")";
    throw Error(ErrorKind::InvalidApex, msg.str());
  }
  return ContourGamma(p, spec.alpha);
}

double omega_margin(const HalfPlane& hp, cplx omega) {
  return hp.offset - (omega * std::polar(1.0, hp.theta)).real();
}

bool halfplane_contains(const HalfPlane& hp, cplx omega) {
  return (omega * std::polar(1.0, hp.theta)).real() < hp.offset;
}

}  // namespace spw
