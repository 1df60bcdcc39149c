#pragma once

#include "spw/catalog.hpp"
#include "spw/indicator.hpp"
#include "spw/quadrature.hpp"
#include "spw/sector.hpp"

namespace spw {

inline constexpr double kDefaultMinMargin = 1e-3;

struct TransformOptions {
  /// Smallest admissible distance of omega to the boundary of Omega_theta.
  double min_margin = kDefaultMinMargin;
  IndicatorSource source = IndicatorSource::Oracle;
};

struct TransformQuery {
  double theta;
  cplx omega;
  QuadratureBudget budget;
};

/// g_theta(omega) = (1/2 pi i) int_0^inf f(t e^{i theta}) e^{omega t e^{i theta}} e^{i theta} dt.
/// Throws OutsideDomain when omega is closer than min_margin to the boundary
/// of Omega_theta (or outside it).
IntegralResult directional_transform(const TestFunction& fn, const TransformQuery& q,
                                     const TransformOptions& options = {});

/// The concatenated transform g on Omega, the union of the half-planes
/// Omega_theta for |theta| <= alpha. Evaluates through the direction whose
/// half-plane contains omega with the largest margin.
class ConcatenatedTransform {
 public:
  explicit ConcatenatedTransform(TestFunction fn, TransformOptions options = {});

  const TestFunction& function() const { return fn_; }
  const TransformOptions& options() const { return options_; }
  double min_margin() const { return options_.min_margin; }

  HalfPlane halfplane(double theta) const;
  /// -I_f(theta) - Re(omega e^{i theta}).
  double margin(double theta, cplx omega) const;

  /// Maximizer of the margin over |theta| <= alpha; ties go to the smallest |theta|.
  /// Throws OutsideUnion when the best margin is below min_margin.
  double select_direction(cplx omega) const;

  IntegralResult operator()(cplx omega, const QuadratureBudget& budget) const;

 private:
  TestFunction fn_;
  TransformOptions options_;
  bool vanishes_;
};

double select_direction(const ConcatenatedTransform& ct, cplx omega);
IntegralResult concatenated_transform(const ConcatenatedTransform& ct, cplx omega,
                                      const QuadratureBudget& budget);

struct ConsistencyReport {
  double residual;
  /// Sum of the two transforms' error estimates.
  double est_error;
  IntegralResult first;
  IntegralResult second;
};

/// |g_theta1(omega) - g_theta2(omega)| from two independent ray integrals.
ConsistencyReport consistency_residual(const TestFunction& fn, double theta1, double theta2, cplx omega,
                                       const QuadratureBudget& budget, const TransformOptions& options = {});

/// -C_eps / (h + eps + p cos alpha); requires the denominator to be negative.
double unified_gamma_bound(const SectorSpec& spec, const GrowthCertificate& cert, const ContourGamma& gamma);

/// Rigorous bound on |g| along the contour from the directional envelope:
/// A / (2 pi (-h - p cos alpha)).
double gamma_envelope(const TestFunction& fn, const ContourGamma& gamma);

struct GammaBoundReport {
  /// max |g| - bound over the samples; <= 0 means the estimate holds.
  double worst_excess;
  double bound;
  double max_abs_g;
  cplx worst_point;
};

/// Samples g on both legs (apex plus geometric spacing in t up to t_max).
GammaBoundReport gamma_bound_check(const TestFunction& fn, const GrowthCertificate& cert,
                                   const ContourGamma& gamma, int samples, const QuadratureBudget& budget,
                                   double t_max = 20.0, const TransformOptions& options = {});

}  // namespace spw
