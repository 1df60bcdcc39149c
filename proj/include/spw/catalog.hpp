#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spw/sector.hpp"

namespace spw {

/// A sample function of exponential type on a closed sector, with whatever
/// closed-form knowledge is available about it. Optional maps are empty
/// std::function objects when absent.
struct TestFunction {
  std::string id;
  /// f on the closed sector.
  std::function<cplx(cplx)> eval;
  /// A branch of log f; lets callers form f(z) e^{w z} without overflow.
  /// Real part -inf where f vanishes.
  std::function<cplx(cplx)> log_eval;
  /// Sector the entry was built for and the exponential type h on it.
  SectorSpec spec;
  /// Largest half-angle the entry supports.
  double max_alpha;
  /// Constant A with |f(t e^{i theta})| <= A e^{I_f(theta) t} for t >= 0, |theta| <= alpha.
  double envelope;
  std::function<double(double)> indicator_oracle;
  /// (theta, omega) -> g_theta(omega) on Omega_theta.
  std::function<cplx(double, cplx)> transform_oracle;
  /// Angular frequency of f along the ray of direction theta.
  std::function<double(double)> frequency;
  std::vector<cplx> singularities_of_g;

  /// f(z) e^{w z}, through log_eval when present.
  cplx eval_times_exp(cplx z, cplx w) const;
  /// ln|f(z)|, -inf where f vanishes.
  double log_modulus(cplx z) const;

  /// Growth certificate with C_eps = envelope, valid for every epsilon > 0.
  GrowthCertificate certificate(double epsilon) const { return {epsilon, envelope}; }
};

/// One term c e^{a z} of an exponential sum.
struct ExpTerm {
  cplx coeff;
  cplx rate;
};

/// Sentinel used in place of an indicator of -inf (f identically zero).
inline constexpr double kIndicatorFloor = -1e9;

/// Half-angle used when an entry is built without an explicit sector.
inline constexpr double kDefaultAlpha = 0.78539816339744830962;  // pi/4

/// Largest half-angle any built-in supports (entire or pole-free on Re z >= 0).
double builtin_max_alpha();

/// sum_k c_k e^{a_k z}; terms with equal rate are merged and zero terms dropped.
TestFunction make_exp_sum(std::vector<ExpTerm> terms, double alpha, std::string id = {});
TestFunction make_exp(cplx a, double alpha);
TestFunction make_zero(double alpha);
/// 1/(z+1): type 0, indicator 0, no closed-form transform.
TestFunction make_rational(double alpha);
/// e^{iz}: indicator -sin(theta).
TestFunction make_trig_decay(double alpha);

/// EXP(-1), EXP(1), ZERO, RATIONAL, TRIG-DECAY, and SUM(e^{-z} + 2 e^{-2z}).
std::vector<TestFunction> builtin_catalog(double alpha = kDefaultAlpha);

/// Parses "re+imi" style complex literals: "1", "-1", "2i", "-1+i", "1e-3-2.5i".
cplx parse_complex(std::string_view text);

/// Builds a catalog entry from an id such as "exp:a=-1", "zero", "rational",
/// "trig" or "sum:c0=1,a0=-1,c1=2,a1=-2". alpha is clamped to the entry's maximum.
TestFunction parse_function(std::string_view id, double alpha);

/// max over grid of |f(z)| / (C_eps e^{(h+eps)|z|}).
double check_growth(const TestFunction& fn, const GrowthCertificate& cert, std::span<const cplx> grid);

}  // namespace spw
