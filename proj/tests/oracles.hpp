// Reference computations kept deliberately naive: fixed-step rules and
// closed forms, sharing no code with the library's adaptive quadrature.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using cplx = std::complex<double>;

inline const cplx kTwoPiI(0.0, 2.0 * std::numbers::pi);

/// Composite Simpson rule with n (even) subintervals.
inline cplx simpson(const std::function<cplx(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  cplx sum = f(a) + f(b);
  for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return sum * (h / 3.0);
}

/// Directional transform of f by Simpson on [0, T].
inline cplx directional(const std::function<cplx(cplx)>& f, double theta, cplx omega, double T, int n) {
  const cplx d = std::polar(1.0, theta);
  return simpson([&](double t) { return f(t * d) * std::exp(omega * t * d) * d; }, 0.0, T, n) / kTwoPiI;
}

/// Transform of e^{a z}: the residue form -1/(2 pi i (omega + a)).
inline cplx exp_transform(cplx a, cplx omega) { return -1.0 / (kTwoPiI * (omega + a)); }

/// int_Gamma g(omega) e^{-omega z} d omega by Simpson on both legs, truncated at length L.
inline cplx gamma_integral(const std::function<cplx(cplx)>& g, double p, double alpha, cplx z, double L, int n) {
  const cplx i(0.0, 1.0);
  const cplx up = i * std::polar(1.0, -alpha);
  const cplx down = -i * std::polar(1.0, alpha);
  auto leg = [&](cplx dir) {
    return simpson([&](double u) { return g(p + u * dir) * std::exp(-(p + u * dir) * z) * dir; }, 0.0, L, n);
  };
  return leg(up) - leg(down);
}

/// Derivative of an analytic map along the real and imaginary axes; equal for holomorphic g.
inline std::pair<cplx, cplx> cauchy_riemann(const std::function<cplx(cplx)>& g, cplx w, double h = 1e-5) {
  const cplx dx = (g(w + h) - g(w - h)) / (2.0 * h);
  const cplx dy = (g(w + cplx(0.0, h)) - g(w - cplx(0.0, h))) / (2.0 * h * cplx(0.0, 1.0));
  return {dx, dy};
}

}  // namespace oracle
