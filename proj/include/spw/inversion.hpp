#pragma once

#include <string>
#include <vector>

#include "spw/catalog.hpp"
#include "spw/laplace.hpp"
#include "spw/quadrature.hpp"
#include "spw/sector.hpp"

namespace spw {

enum class GSource { Oracle, Numeric };

inline constexpr double kDefaultAngularMargin = 0.05;

struct InversionOptions {
  GSource g_source = GSource::Oracle;
  /// Required angular distance of z to the sector boundary.
  double angular_margin = kDefaultAngularMargin;
  /// Inner transform tolerance relative to the outer one (numeric g only).
  double inner_tightening = 0.01;
  TransformOptions transform{};
};

struct ReconstructionQuery {
  cplx z;
  QuadratureBudget budget;
};

struct LegIntegrals {
  IntegralResult lower;
  IntegralResult upper;
  IntegralResult total;
};

/// Both legs of int_Gamma g(omega) e^{-omega z} d omega, Gamma traversed with
/// increasing t (toward the apex along the lower leg, then out along the upper).
LegIntegrals reconstruct_legs(const TestFunction& fn, const ContourGamma& gamma, const ReconstructionQuery& q,
                              const InversionOptions& options = {});

/// f(z) recovered as int_Gamma g(omega) e^{-omega z} d omega.
IntegralResult reconstruct(const TestFunction& fn, const ContourGamma& gamma, const ReconstructionQuery& q,
                           const InversionOptions& options = {});

/// The same leg computed in the other order: the inner omega integral over the
/// leg is done first for each zeta on the matching sector boundary ray, then
/// the outer zeta integral. Agrees with the corresponding field of reconstruct_legs.
IntegralResult fubini_swapped_leg(const TestFunction& fn, const ContourGamma& gamma, Leg leg,
                                  const ReconstructionQuery& q, const InversionOptions& options = {});

struct RoundtripRow {
  cplx z;
  cplx exact;
  cplx reconstructed;
  double abs_residual;
  /// abs_residual / |f(z)|, or abs_residual itself when f(z) = 0.
  double rel_residual;
  double est_error;
  /// Empty on success, otherwise the failure message for this point.
  std::string error;
};

struct RoundtripReport {
  std::vector<RoundtripRow> rows;
  double max_rel;
  double median_rel;
  int failures;
};

/// Radii {0.5, 1, 2} times arguments {-0.6 alpha, 0, 0.6 alpha}.
std::vector<cplx> default_z_grid(double alpha);

/// Per-point round trip f -> g -> f; failures are recorded per row, not thrown.
RoundtripReport roundtrip_report(const TestFunction& fn, const ContourGamma& gamma, std::span<const cplx> z_grid,
                                 const QuadratureBudget& budget, const InversionOptions& options = {});

struct CauchyPathReport {
  /// |2 pi i f(z) - (boundary ray integrals)|
  double residual;
  /// |2 pi i f(z)|
  double reference;
  double est_error;
  cplx boundary_value;
};

/// Checks 2 pi i f(z) = int_{e^{-i alpha}[0,inf)} K - int_{e^{i alpha}[0,inf)} K with
/// K(zeta) = f(zeta) e^{p(zeta - z)} / (zeta - z).
CauchyPathReport cauchy_path_check(const TestFunction& fn, const ContourGamma& gamma, cplx z,
                                   const QuadratureBudget& budget, double angular_margin = kDefaultAngularMargin);

}  // namespace spw
