#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace spw {

using cplx = std::complex<double>;
using RealToComplex = std::function<cplx(double)>;

/// Accuracy and resource limits for one integral.
struct QuadratureBudget {
  double rel_tol = 1e-10;
  double abs_floor = 1e-15;
  int max_panels = 50000;
  /// Gauss-Legendre nodes per panel.
  int panel_order = 16;

  /// Throws InvalidArgument when a field is out of range
  /// (rel_tol >= 1e-14, max_panels * panel_order <= 1e7).
  void validate() const;

  /// Copy with rel_tol and abs_floor scaled by `factor` (rel_tol clamped at 1e-14).
  QuadratureBudget tightened(double factor) const;
};

/// Envelope |fn(t)| <= amplitude * e^{-rate t} for t >= 0.
struct DecayModel {
  double rate;
  double amplitude = 1.0;
  /// Dominant angular frequency of the integrand; 0 when unknown.
  double frequency = 0.0;
  /// Length scale of localized features; 0 when unknown.
  double feature_length = 0.0;
};

struct IntegralResult {
  cplx value{};
  double est_error = 0.0;
  double truncation_T = 0.0;
  int panels_used = 0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached per order; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int order);

/// Adaptive integration of fn over [a, b]. Panels longer than
/// `max_panel_length` are split before the adaptive phase starts.
IntegralResult integrate_segment(const RealToComplex& fn, double a, double b,
                                 const QuadratureBudget& budget,
                                 double max_panel_length = std::numeric_limits<double>::infinity());

/// Integral over [0, inf) of an integrand obeying `decay`. The truncation
/// point T is chosen from the analytic tail bound A e^{-mT}/m.
IntegralResult integrate_ray(const RealToComplex& fn, const DecayModel& decay,
                             const QuadratureBudget& budget);

/// |1/z + int_0^inf e^{w z} dw| for Re z < 0.
double cauchy_kernel_check(cplx z, const QuadratureBudget& budget);

}  // namespace spw
