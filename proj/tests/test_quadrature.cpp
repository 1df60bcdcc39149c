#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "spw/error.hpp"
#include "spw/quadrature.hpp"

using namespace spw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ErrorKind kind_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected spw::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2n-1") {
  for (const int n : {1, 2, 5, 16, 32}) {
    const GaussLegendreRule& rule = gauss_legendre(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    for (int degree = 0; degree <= 2 * n - 1; ++degree) {
      double sum = 0.0;
      for (int k = 0; k < n; ++k) sum += rule.weights[k] * std::pow(rule.nodes[k], degree);
      const double exact = degree % 2 ? 0.0 : 2.0 / (degree + 1);
      CHECK_THAT(sum, WithinAbs(exact, 1e-14));
    }
    for (int k = 0; k < n; ++k) CHECK_THAT(rule.nodes[k], WithinAbs(-rule.nodes[n - 1 - k], 1e-15));
  }
}

TEST_CASE("segment integration of smooth integrands") {
  const QuadratureBudget budget;
  const IntegralResult sine = integrate_segment([](double t) { return cplx(std::sin(t)); }, 0.0, 10.0, budget);
  CHECK_THAT(sine.value.real(), WithinRel(2.0 * std::pow(std::sin(5.0), 2), 1e-12));
  CHECK(sine.est_error < 1e-9);

  const IntegralResult peak = integrate_segment([](double t) { return cplx(1.0 / (1e-4 + t * t)); }, -1.0, 1.0,
                                                budget);
  CHECK_THAT(peak.value.real(), WithinRel(2.0 * std::atan(100.0) * 100.0, 1e-10));
  CHECK(std::abs(peak.value.real() - 2.0 * std::atan(100.0) * 100.0) <= peak.est_error + 1e-12);
}

TEST_CASE("ray integration against closed forms") {
  const QuadratureBudget budget;
  const IntegralResult r1 = integrate_ray([](double t) { return cplx(std::exp(-t)); }, {1.0}, budget);
  CHECK_THAT(r1.value.real(), WithinRel(1.0, 1e-10));
  CHECK(std::abs(r1.value.real() - 1.0) <= r1.est_error);
  CHECK(r1.truncation_T > 0.0);

  const cplx a(-1.0, 3.0);
  const IntegralResult r2 = integrate_ray([&](double t) { return std::exp(a * t); }, {1.0, 1.0, 3.0}, budget);
  CHECK(std::abs(r2.value - (-1.0 / a)) < 1e-10);
  CHECK(std::abs(r2.value - (-1.0 / a)) <= r2.est_error);

  const IntegralResult r3 = integrate_ray([](double t) { return cplx(t * std::exp(-0.1 * t)); },
                                          {0.05, 1.0 / (0.05 * std::exp(1.0))}, budget);
  CHECK_THAT(r3.value.real(), WithinRel(100.0, 1e-9));
}

TEST_CASE("Cauchy kernel identity on a grid of Re z < 0") {
  const QuadratureBudget budget = QuadratureBudget{}.tightened(1e-3);
  for (const double x : {-0.01, -0.5, -3.0}) {
    for (const double y : {-10.0, -1.0, 0.0, 2.0, 10.0}) {
      CHECK(cauchy_kernel_check(cplx(x, y), budget) < 1e-10);
    }
  }
  CHECK(kind_of([&] { cauchy_kernel_check(cplx(0.0, 1.0), budget); }) == ErrorKind::InvalidDecay);
}

TEST_CASE("estimated error bounds the true error of decaying ray integrals") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> rate(0.05, 5.0);
  std::uniform_real_distribution<double> freq(0.0, 20.0);
  for (int k = 0; k < 60; ++k) {
    const cplx a(-rate(rng), freq(rng));
    QuadratureBudget budget;
    budget.rel_tol = 1e-8;
    const IntegralResult r =
        integrate_ray([&](double t) { return std::exp(a * t); }, {-a.real(), 1.0, a.imag()}, budget);
    CHECK(std::abs(r.value + 1.0 / a) <= r.est_error);

    // tightening moves T outward; both answers agree within the looser estimate
    const IntegralResult tight =
        integrate_ray([&](double t) { return std::exp(a * t); }, {-a.real(), 1.0, a.imag()}, budget.tightened(1e-3));
    CHECK(tight.truncation_T > r.truncation_T);
    CHECK(std::abs(tight.value - r.value) <= r.est_error + tight.est_error);
  }
}

TEST_CASE("integration is linear up to the estimated errors") {
  const QuadratureBudget budget;
  const cplx a(-0.7, 2.0), b(-1.3, -0.5);
  const cplx ca(2.0, -1.0), cb(-0.5, 3.0);
  const DecayModel decay{0.7, 4.0, 2.0};
  auto fa = [&](double t) { return std::exp(a * t); };
  auto fb = [&](double t) { return std::exp(b * t); };
  const IntegralResult ia = integrate_ray(fa, decay, budget);
  const IntegralResult ib = integrate_ray(fb, decay, budget);
  const IntegralResult ic = integrate_ray([&](double t) { return ca * fa(t) + cb * fb(t); }, decay, budget);
  CHECK(std::abs(ic.value - (ca * ia.value + cb * ib.value)) <=
        ic.est_error + std::abs(ca) * ia.est_error + std::abs(cb) * ib.est_error);
}

TEST_CASE("conjugating the integrand conjugates the result exactly") {
  const QuadratureBudget budget;
  const cplx a(-0.3, 4.0);
  auto f = [&](double t) { return std::exp(a * t) / (1.0 + t); };
  const DecayModel decay{0.3, 1.0, 4.0};
  const IntegralResult r = integrate_ray(f, decay, budget);
  const IntegralResult rc = integrate_ray([&](double t) { return std::conj(f(t)); }, decay, budget);
  CHECK(rc.value == std::conj(r.value));
  CHECK(rc.est_error == r.est_error);
  CHECK(rc.panels_used == r.panels_used);
}

TEST_CASE("library quadrature agrees with a fixed-step Simpson reference") {
  auto f = [](double t) { return std::exp(cplx(-0.5, 1.0) * t) * std::cos(t * t / 10.0); };
  const cplx reference = oracle::simpson(f, 0.0, 80.0, 400000);
  const IntegralResult r = integrate_ray(f, {0.5, 1.0, 17.0}, QuadratureBudget{});
  CHECK(std::abs(r.value - reference) < 1e-10);
}

TEST_CASE("quadrature failure modes") {
  QuadratureBudget bad;
  bad.rel_tol = 0.0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidArgument);
  bad = QuadratureBudget{};
  bad.max_panels = 0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidArgument);

  const QuadratureBudget budget;
  CHECK(kind_of([&] { integrate_ray([](double) { return cplx(1.0); }, {0.0}, budget); }) ==
        ErrorKind::InvalidDecay);
  CHECK(kind_of([&] { integrate_ray([](double) { return cplx(1.0); }, {-1.0}, budget); }) ==
        ErrorKind::InvalidDecay);
  CHECK(kind_of([&] {
          integrate_segment([](double t) { return cplx(t > 0.5 ? NAN : 1.0); }, 0.0, 1.0, budget);
        }) == ErrorKind::IllConditioned);

  QuadratureBudget tiny;
  tiny.max_panels = 4;
  tiny.rel_tol = 1e-13;
  CHECK(kind_of([&] {
          integrate_segment([](double t) { return cplx(std::sin(200.0 * t)); }, 0.0, 100.0, tiny);
        }) == ErrorKind::BudgetExceeded);
}
