#include "spw/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "spw/catalog.hpp"
#include "spw/error.hpp"
#include "spw/indicator.hpp"
#include "spw/inversion.hpp"
#include "spw/laplace.hpp"
#include "spw/probe.hpp"
#include "spw/quadrature.hpp"
#include "spw/sector.hpp"

namespace spw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAlpha = kPi / 4;
constexpr std::uint64_t kSeed = 0x5eed2026;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << v;
  return out.str();
}

cplx exp_oracle(cplx a, cplx omega) { return -1.0 / (cplx(0.0, 2.0 * kPi) * (omega + a)); }

// Uniformly placed point of Omega_theta: margin in [m_lo, m_hi], offset along the boundary in [-5, 5].
cplx random_admissible(std::mt19937_64& rng, const HalfPlane& hp, double m_lo, double m_hi) {
  std::uniform_real_distribution<double> margin(m_lo, m_hi), along(-5.0, 5.0);
  return hp.nearest_boundary_point() + margin(rng) * hp.inward_normal() + along(rng) * hp.boundary_direction();
}

struct RoundtripCase {
  TestFunction fn;
  double p;
};

std::vector<RoundtripCase> roundtrip_cases() {
  return {{make_exp(-1.0, kAlpha), -1.0},
          {make_exp(1.0, kAlpha), -2.0},
          {make_exp_sum({{1.0, -1.0}, {2.0, -2.0}}, kAlpha), -1.0}};
}

Outcome kernel_identity() {
  QuadratureBudget budget;
  budget.rel_tol = 1e-13;
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const cplx z(-4.0 + (4.0 - 0.01) * i / 4.0, -2.0 + j);
      worst = std::max(worst, cauchy_kernel_check(z, budget));
    }
  }
  return {worst <= 1e-10, "max residual " + fmt(worst) + " (limit 1e-10, 25 points)"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(kSeed);
  QuadratureBudget budget;
  budget.rel_tol = 1e-12;
  double worst = 0.0;
  for (const cplx a : {cplx(-1.0), cplx(1.0), cplx(-1.0, 1.0), cplx(2.0)}) {
    const TestFunction fn = make_exp(a, kAlpha);
    std::uniform_real_distribution<double> theta(-kAlpha, kAlpha);
    for (int k = 0; k < 50; ++k) {
      const double t = theta(rng);
      const cplx omega = random_admissible(rng, omega_theta(fn, t), 0.05, 3.0);
      const IntegralResult r = directional_transform(fn, {t, omega, budget});
      const cplx expected = exp_oracle(a, omega);
      worst = std::max(worst, std::abs(r.value - expected) / std::abs(expected));
    }
  }
  return {worst <= 1e-8, "max relative error " + fmt(worst) + " (limit 1e-8, 4x50 samples)"};
}

Outcome direction_irrelevance() {
  std::mt19937_64 rng(kSeed + 1);
  std::vector<TestFunction> entries;
  for (const TestFunction& fn : builtin_catalog(kAlpha)) {
    if (fn.transform_oracle && fn.id != "zero") entries.push_back(fn);
  }
  entries.push_back(make_exp(cplx(-1.0, 1.0), kAlpha));
  entries.push_back(make_zero(kAlpha));

  QuadratureBudget budget;
  std::uniform_real_distribution<double> theta(-kAlpha, kAlpha);
  int worst_case = 0;
  double worst_ratio = 0.0;
  for (int k = 0; k < 100; ++k) {
    const TestFunction& fn = entries[k % entries.size()];
    double t1 = 0.0, t2 = 0.0;
    cplx omega;
    for (;;) {
      t1 = theta(rng);
      t2 = theta(rng);
      omega = random_admissible(rng, omega_theta(fn, t1), 0.05, 3.0);
      if (omega_margin(omega_theta(fn, t2), omega) >= 0.05) break;
    }
    const ConsistencyReport c = consistency_residual(fn, t1, t2, omega, budget);
    const double allowed = 2.0 * std::max(c.first.est_error, c.second.est_error);
    const double ratio = allowed > 0.0 ? c.residual / allowed : (c.residual == 0.0 ? 0.0 : INFINITY);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_case = k;
    }
  }
  return {worst_ratio <= 1.0, "max residual/(2 est_error) " + fmt(worst_ratio) + " at triple " +
                                  std::to_string(worst_case) + " (100 triples)"};
}

Outcome roundtrip() {
  QuadratureBudget budget;
  double worst_oracle = 0.0, worst_numeric = 0.0;
  for (const RoundtripCase& c : roundtrip_cases()) {
    const ContourGamma gamma = build_gamma(c.fn.spec, c.p);
    const std::vector<cplx> grid = default_z_grid(kAlpha);
    InversionOptions oracle;
    worst_oracle = std::max(worst_oracle, roundtrip_report(c.fn, gamma, grid, budget, oracle).max_rel);
    InversionOptions numeric;
    numeric.g_source = GSource::Numeric;
    QuadratureBudget outer = budget;
    outer.rel_tol = 1e-8;
    worst_numeric = std::max(worst_numeric, roundtrip_report(c.fn, gamma, grid, outer, numeric).max_rel);
  }
  return {worst_oracle <= 1e-6 && worst_numeric <= 1e-4,
          "max relative residual oracle " + fmt(worst_oracle) + " (limit 1e-6), numeric " + fmt(worst_numeric) +
              " (limit 1e-4)"};
}

Outcome cauchy_path() {
  QuadratureBudget budget;
  double worst = 0.0;
  for (const RoundtripCase& c : roundtrip_cases()) {
    const ContourGamma gamma = build_gamma(c.fn.spec, c.p);
    for (const cplx z : default_z_grid(kAlpha)) {
      const CauchyPathReport r = cauchy_path_check(c.fn, gamma, z, budget);
      worst = std::max(worst, r.residual / r.reference);
    }
  }
  return {worst <= 1e-8, "max relative residual " + fmt(worst) + " (limit 1e-8)"};
}

Outcome apex_invariance() {
  QuadratureBudget budget;
  double worst_ratio = 0.0;
  for (const RoundtripCase& c : roundtrip_cases()) {
    const ContourGamma g1 = build_gamma(c.fn.spec, c.p);
    const ContourGamma g2 = build_gamma(c.fn.spec, c.p - 1.0);
    for (const cplx z : default_z_grid(kAlpha)) {
      const IntegralResult r1 = reconstruct(c.fn, g1, {z, budget});
      const IntegralResult r2 = reconstruct(c.fn, g2, {z, budget});
      worst_ratio = std::max(worst_ratio, std::abs(r1.value - r2.value) / (r1.est_error + r2.est_error));
    }
  }
  return {worst_ratio <= 1.0, "max |difference|/combined est_error " + fmt(worst_ratio)};
}

Outcome unified_bound() {
  QuadratureBudget budget;
  const GrowthCertificate cert{0.1, 1.0};
  std::ostringstream detail;
  bool ok = true;
  for (const auto& [a, p] : {std::pair{-1.0, -1.0}, std::pair{1.0, -2.0}}) {
    const TestFunction fn = make_exp(a, kAlpha);
    const GammaBoundReport r = gamma_bound_check(fn, cert, build_gamma(fn.spec, p), 200, budget);
    ok = ok && r.worst_excess <= 0.0;
    detail << fn.id << ": worst_excess " << fmt(r.worst_excess) << " (bound " << fmt(r.bound) << ") ";
  }
  return {ok, detail.str()};
}

Outcome indicator_accuracy() {
  double worst = 0.0;
  for (const cplx a : {cplx(1.0), cplx(-1.0), cplx(0.0, 1.0)}) {
    const TestFunction fn = make_exp(a, kAlpha);
    for (int k = 0; k < 9; ++k) {
      const double theta = -kAlpha + 2.0 * kAlpha * k / 8.0;
      const IndicatorEstimate e = estimate_indicator(fn, theta);
      worst = std::max(worst, std::abs(e.value - (a * std::polar(1.0, theta)).real()));
    }
  }
  return {worst <= 0.02, "max |estimate - Re(a e^{i theta})| " + fmt(worst) + " (limit 0.02)"};
}

Outcome sharpness() {
  double worst_pole = 0.0;
  for (const cplx a : {cplx(1.0), cplx(-1.0), cplx(-1.0, 1.0), cplx(2.0), cplx(0.0, 1.0)}) {
    const BlowupResult b = blowup_scan(make_exp(a, kAlpha), 0.0);
    worst_pole = std::max(worst_pole, std::abs(b.singular_point + a));
  }
  QuadratureBudget budget;
  double worst_radius = 0.0;
  const TestFunction fn = make_exp(1.0, kAlpha);
  for (const cplx center : {cplx(-2.0), cplx(-3.0)}) {
    const RadiusReport r = radius_scan(fn, center, budget);
    worst_radius = std::max(worst_radius, std::abs(r.radius_estimate / r.predicted_distance - 1.0));
  }
  return {worst_pole <= 1e-3 && worst_radius <= 0.05,
          "max pole offset " + fmt(worst_pole) + " (limit 1e-3), max radius deviation " + fmt(worst_radius) +
              " (limit 5%)"};
}

Outcome j_slopes() {
  const TestFunction fn = make_exp(1.0, kAlpha);
  const auto [q, r] = default_gamma_prime(omega_theta(fn, 0.0));
  std::vector<double> s_grid;
  for (double s = 10.0; s <= 80.0; s += 5.0) s_grid.push_back(s);
  const JDiagnostics j = gamma_prime_diagnostics(fn, 0.0, q, r, s_grid, QuadratureBudget{});
  const double limit = -j.inf_re + 0.02;
  const double worst = std::max({j.slopes[0], j.slopes[1], j.slopes[2]});
  return {worst <= limit, "slopes " + fmt(j.slopes[0]) + ", " + fmt(j.slopes[1]) + ", " + fmt(j.slopes[2]) +
                              " vs -inf Re + 0.02 = " + fmt(limit) + " (I_f(0) = 1)"};
}

Outcome constraint_gate() {
  std::mt19937_64 rng(kSeed + 2);
  std::uniform_real_distribution<double> alpha(0.05, 1.5), h(0.0, 3.0), p(-10.0, 1.0);
  int mismatches = 0, accepted = 0;
  for (int k = 0; k < 100; ++k) {
    const SectorSpec spec = SectorSpec::make(alpha(rng), k % 10 == 0 ? 0.0 : h(rng));
    // every fifth case sits on the boundary p cos(alpha) = -h
    const double apex = k % 5 == 0 ? -spec.h / std::cos(spec.alpha) : p(rng);
    const bool expected = apex * std::cos(spec.alpha) < -spec.h;
    bool built = true;
    try {
      (void)build_gamma(spec, apex);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidApex) throw;
      built = false;
    }
    mismatches += built != expected;
    accepted += built;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches in 100 cases (" + std::to_string(accepted) +
                               " accepted)"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& log) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"kernel identity", kernel_identity},
      {"transform oracle equivalence", oracle_equivalence},
      {"direction irrelevance", direction_irrelevance},
      {"round-trip inversion", roundtrip},
      {"Cauchy-path cross-check", cauchy_path},
      {"apex invariance", apex_invariance},
      {"unified bound on Gamma", unified_bound},
      {"indicator accuracy", indicator_accuracy},
      {"sharpness probe", sharpness},
      {"J-decomposition slopes", j_slopes},
      {"constraint gate", constraint_gate},
  };

  std::vector<CriterionResult> results;
  int id = 0;
  for (const auto& [name, run] : criteria) {
    ++id;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, {}};
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back({id, name, outcome.passed, outcome.detail, seconds});
    log << (outcome.passed ? "[PASS] " : "[FAIL] ") << id << ". " << name << ": " << outcome.detail << " ["
        << std::fixed;
    log.precision(2);
    log << seconds << " s]" << std::defaultfloat << std::endl;
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace spw
