#pragma once

#include <complex>

namespace spw {

using cplx = std::complex<double>;

/// Open sector {z != 0 : |arg z| < alpha} together with the exponential type
/// budget h of the functions living on it.
struct SectorSpec {
  double alpha;
  double h;

  /// Validating constructor: 0 < alpha < pi/2, h >= 0 and finite.
  static SectorSpec make(double alpha, double h);
};

/// Pair (epsilon, C_eps) for the growth bound |f(z)| <= C_eps e^{(h+eps)|z|}.
struct GrowthCertificate {
  double epsilon;
  double c_epsilon;
};

/// Ray e^{i theta}[0, inf) from the origin.
struct Ray {
  double theta;

  cplx direction() const { return std::polar(1.0, theta); }
  cplx at(double t) const { return t * direction(); }
};

/// Half-plane {omega : Re(omega e^{i theta}) < offset}.
struct HalfPlane {
  double theta;
  double offset;

  /// The point of the boundary line closest to the origin.
  cplx nearest_boundary_point() const { return offset * std::polar(1.0, -theta); }
  /// Unit vector along the boundary line.
  cplx boundary_direction() const { return cplx(0.0, 1.0) * std::polar(1.0, -theta); }
  /// Unit vector pointing into the half-plane, orthogonal to the boundary.
  cplx inward_normal() const { return -std::polar(1.0, -theta); }
};

enum class Leg { Lower, Upper };

/// The V-shaped contour with apex p: the lower leg p - i e^{i alpha}|t| for
/// t <= 0 and the upper leg p + i e^{-i alpha} t for t > 0, traversed with
/// increasing t.
class ContourGamma {
 public:
  double apex() const { return p_; }
  double alpha() const { return alpha_; }

  /// gamma(t) for t in R.
  cplx point(double t) const;
  /// d gamma / dt; constant on each leg.
  cplx tangent(double t) const;

  /// Unit vector pointing from the apex along the given leg.
  cplx outward(Leg leg) const;
  /// Point at distance u >= 0 from the apex along the given leg.
  cplx leg_point(Leg leg, double u) const { return p_ + u * outward(leg); }

 private:
  friend ContourGamma build_gamma(const SectorSpec& spec, double p);
  ContourGamma(double p, double alpha) : p_(p), alpha_(alpha) {}

  double p_;
  double alpha_;
};

/// Principal argument in (-pi, pi].
double principal_arg(cplx z);

bool sector_contains(const SectorSpec& spec, cplx z, bool closed);

/// Angular distance of z to the sector boundary, min(alpha - arg z, alpha + arg z).
double angular_margin(const SectorSpec& spec, cplx z);

/// Throws InvalidApex unless p cos(alpha) < -h.
ContourGamma build_gamma(const SectorSpec& spec, double p);

bool halfplane_contains(const HalfPlane& hp, cplx omega);

/// offset - Re(omega e^{i theta}); positive iff omega lies in the half-plane.
double omega_margin(const HalfPlane& hp, cplx omega);

}  // namespace spw
