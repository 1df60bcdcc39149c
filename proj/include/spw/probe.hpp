#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spw/catalog.hpp"
#include "spw/inversion.hpp"
#include "spw/laplace.hpp"
#include "spw/quadrature.hpp"

namespace spw {

/// Evaluates g near the boundary of Omega_theta: the closed form when asked and
/// available, otherwise the directional transform along theta.
class BoundaryEvaluator {
 public:
  BoundaryEvaluator(const TestFunction& fn, double theta, GSource source, const QuadratureBudget& budget,
                    double min_margin);
  cplx operator()(cplx omega) const;

 private:
  const TestFunction& fn_;
  double theta_;
  bool use_oracle_;
  QuadratureBudget budget_;
  TransformOptions options_;
};

struct BlowupOptions {
  int sweep_points = 128;
  /// Width of the boundary window, centered at the boundary point nearest the origin.
  double window = 8.0;
  /// Inward offsets from the boundary. With numeric g, offsets from the first
  /// one that exhausts the budget onward are dropped (at least two must remain).
  std::vector<double> delta_grid = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  GSource g_source = GSource::Oracle;
  QuadratureBudget budget{};
};

struct BlowupResult {
  double theta;
  /// Boundary point with the strongest growth, refined along the boundary line.
  cplx singular_point;
  /// Least-squares slope of ln|g| against ln(delta) at singular_point (about -1 for a simple pole).
  double exponent;
  /// |g| at the smallest offset.
  double peak;
};

/// Sweeps the boundary of Omega_theta, approaching each boundary point along
/// the inward normal. Throws NoBlowupDetected when |g| stays bounded.
BlowupResult blowup_scan(const TestFunction& fn, double theta, const BlowupOptions& options = {});

struct RadiusOptions {
  int degree = 24;
  GSource g_source = GSource::Numeric;
  /// Sampling circle radius as a fraction of the margin to the half-plane boundary.
  double circle_fraction = 0.8;
  TransformOptions transform{};
};

struct RadiusReport {
  cplx center;
  double theta;
  double rho;
  double radius_estimate;
  double predicted_distance;
  /// Taylor coefficients c_0..c_N of g at the center.
  std::vector<cplx> coefficients;
};

/// Radius of convergence of the Taylor series of g at `center`, from
/// coefficients obtained by discrete Cauchy integrals on a circle inside
/// Omega_theta and a root test on the tail c_{N/2}..c_N.
RadiusReport radius_scan(const TestFunction& fn, cplx center, const QuadratureBudget& budget,
                         const RadiusOptions& options = {});

struct JDiagnostics {
  std::vector<double> s_grid;
  /// ln J_i(s) for the segment [q, r], the ray from r and the ray from q.
  std::vector<std::array<double, 3>> log_j;
  /// Least-squares growth rates of ln J_i in s over the trailing half of the grid.
  std::array<double, 3> slopes;
  /// inf over the deformed contour of Re(omega e^{i theta}).
  double inf_re;
};

/// Growth rates of the three pieces of the deformed contour: [q, r],
/// r + i e^{-i alpha}[0, inf) and q - i e^{i alpha}[0, inf). Oracle g only.
JDiagnostics gamma_prime_diagnostics(const TestFunction& fn, double theta, cplx q, cplx r,
                                     std::span<const double> s_grid, const QuadratureBudget& budget);

/// Segment of length 4 parallel to the boundary of Omega_theta, shifted
/// `offset` outside it; returns {q, r}.
std::array<cplx, 2> default_gamma_prime(const HalfPlane& hp, double offset = 0.5);

struct ProbeReport {
  double theta;
  cplx boundary_point;
  double blowup_exponent;
  double radius_estimate;
  double predicted_distance;
  std::array<double, 3> j_slopes;
  double inf_re;
  /// Stages that did not produce a value, with the reason.
  std::vector<std::string> notes;
};

struct ProbeOptions {
  BlowupOptions blowup{};
  RadiusOptions radius{};
  /// Distance of the Taylor center from the boundary, along the inward normal.
  double center_depth = 1.0;
  std::vector<double> s_grid{};
};

/// Blow-up scan, radius scan at a point inside Omega_theta, and J diagnostics
/// on the default deformed contour. Failures of individual stages are noted.
ProbeReport run_probe(const TestFunction& fn, double theta, const QuadratureBudget& budget,
                      const ProbeOptions& options = {});

}  // namespace spw
