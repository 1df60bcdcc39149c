#pragma once

#include <span>
#include <vector>

#include "spw/catalog.hpp"
#include "spw/sector.hpp"

namespace spw {

struct IndicatorEstimate {
  double theta;
  double value;
  /// Spread of the window means over the trailing half of the grid.
  double ci_width;
  /// Largest radius that contributed a sample.
  double s_max;
};

enum class IndicatorSource { Oracle, Numeric };

/// n radii geometric from s_min to s_max (64 points from 1 to 2^16 by default).
std::vector<double> geometric_grid(double s_min = 1.0, double s_max = 65536.0, int n = 64);

inline constexpr int kDefaultIndicatorWindow = 8;

/// limsup surrogate for ln|f(s e^{i theta})|/s: the largest mean over sliding
/// windows in the trailing half of the grid. Samples where f vanishes are
/// skipped; an all-zero ray yields kIndicatorFloor.
IndicatorEstimate estimate_indicator(const TestFunction& fn, double theta, std::span<const double> s_grid,
                                     int window = kDefaultIndicatorWindow);

/// estimate_indicator on the default grid.
IndicatorEstimate estimate_indicator(const TestFunction& fn, double theta);

/// I_f(theta) from the oracle, or numerically when the oracle is absent or
/// `source` asks for it. Never below kIndicatorFloor.
double indicator_value(const TestFunction& fn, double theta, IndicatorSource source);

/// Omega_theta = {Re(omega e^{i theta}) < -I_f(theta)}; offsets are capped at -kIndicatorFloor.
HalfPlane omega_theta(const TestFunction& fn, double theta, IndicatorSource source = IndicatorSource::Oracle);

}  // namespace spw
