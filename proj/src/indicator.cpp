#include "spw/indicator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spw/error.hpp"

namespace spw {

namespace {

constexpr double kUnderflowGuard = 1e-300;
// ln(kUnderflowGuard) with headroom: a zero following samples this small is underflow, not a root.
const double kUnderflowLog = std::log(kUnderflowGuard) + 10.0;

void check_theta(const TestFunction& fn, double theta) {
  if (!(std::abs(theta) <= fn.spec.alpha + 1e-12)) {
    std::ostringstream msg;
    msg << "direction theta=" << theta << " lies outside the closed sector |theta| <= " << fn.spec.alpha;
    throw Error(ErrorKind::OutsideSector, msg.str());
  }
}

}  // namespace

std::vector<double> geometric_grid(double s_min, double s_max, int n) {
  if (n < 2 || !(s_min > 0.0) || !(s_max > s_min)) {
    throw Error(ErrorKind::InvalidArgument, "geometric grid needs n >= 2 and 0 < s_min < s_max");
  }
  std::vector<double> grid(n);
  const double ratio = std::log(s_max / s_min) / (n - 1);
  for (int k = 0; k < n; ++k) grid[k] = s_min * std::exp(ratio * k);
  grid.back() = s_max;
  return grid;
}

IndicatorEstimate estimate_indicator(const TestFunction& fn, double theta, std::span<const double> s_grid,
                                     int window) {
  check_theta(fn, theta);
  if (window < 1 || s_grid.size() < 3 * static_cast<std::size_t>(window)) {
    throw Error(ErrorKind::InvalidArgument, "indicator grid must hold at least 3*window radii");
  }
  if (!std::is_sorted(s_grid.begin(), s_grid.end()) || s_grid.front() <= 0.0) {
    throw Error(ErrorKind::InvalidArgument, "indicator grid must be positive and increasing");
  }

  const cplx dir = std::polar(1.0, theta);
  std::vector<double> slopes;
  std::vector<double> radii;
  bool seen_nonzero = false;
  double last_log = 0.0;
  bool underflow = false;
  for (const double s : s_grid) {
    const double lm = fn.log_modulus(s * dir);
    if (lm == -std::numeric_limits<double>::infinity()) {
      if (seen_nonzero && last_log < kUnderflowLog) {
        underflow = true;
        break;
      }
      continue;
    }
    if (!fn.log_eval && lm < std::log(kUnderflowGuard)) {
      underflow = true;
      break;
    }
    seen_nonzero = true;
    last_log = lm;
    slopes.push_back(lm / s);
    radii.push_back(s);
  }

  if (slopes.empty() && !underflow) {
    // a ray that is zero on the whole grid but not near the origin has underflowed
    for (double s = s_grid.front() / 2; s > 1e-12 * s_grid.front(); s /= 2) {
      if (std::isfinite(fn.log_modulus(s * dir))) {
        underflow = true;
        break;
      }
    }
    if (!underflow) return {theta, kIndicatorFloor, 0.0, s_grid.back()};
  }
  if (slopes.size() < 2 * static_cast<std::size_t>(window)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "|f| underflows along theta=" << theta << "; indicator is at most "
        << (slopes.empty() ? kIndicatorFloor : slopes.back()) << " (last representable slope)";
    throw Error(ErrorKind::EvaluationUnderflow, msg.str());
  }

  const std::size_t n = slopes.size();
  const std::size_t start = n / 2;
  double best = -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = start; k + window <= n; ++k) {
    double mean = 0.0;
    for (std::size_t j = k; j < k + window; ++j) mean += slopes[j];
    mean /= window;
    best = std::max(best, mean);
    worst = std::min(worst, mean);
  }
  return {theta, std::max(best, kIndicatorFloor), best - worst, radii.back()};
}

IndicatorEstimate estimate_indicator(const TestFunction& fn, double theta) {
  const std::vector<double> grid = geometric_grid();
  return estimate_indicator(fn, theta, grid, kDefaultIndicatorWindow);
}

double indicator_value(const TestFunction& fn, double theta, IndicatorSource source) {
  check_theta(fn, theta);
  if (source == IndicatorSource::Oracle && fn.indicator_oracle) {
    return std::max(fn.indicator_oracle(theta), kIndicatorFloor);
  }
  return estimate_indicator(fn, theta).value;
}

HalfPlane omega_theta(const TestFunction& fn, double theta, IndicatorSource source) {
  return HalfPlane{theta, -indicator_value(fn, theta, source)};
}

}  // namespace spw
