#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "spw/catalog.hpp"
#include "spw/error.hpp"
#include "spw/laplace.hpp"

using namespace spw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

// (1/2 pi i) int_0^inf e^{-t}/(t+1) dt = e E1(1) / (2 pi i); frozen from a 30-digit evaluation.
const cplx kRationalAtMinusOne(0.0, -0.0949116305135498415752702130776);

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

TEST_CASE("directional transform closed forms") {
  const QuadratureBudget budget;
  const IntegralResult r = directional_transform(make_exp(-1.0, kPi / 4), {0.0, 0.0, budget});
  CHECK_THAT(r.value.imag(), WithinAbs(-0.15915494309189535, 1e-10));
  CHECK_THAT(r.value.real(), WithinAbs(0.0, 1e-10));
  CHECK(std::abs(r.value - cplx(0.0, -0.15915494309189535)) <= r.est_error);
  CHECK(r.est_error < 1e-9);

  const IntegralResult z = directional_transform(make_zero(kPi / 4), {0.0, -1.0, budget});
  CHECK(z.value == cplx(0.0));

  // -1/(2 pi i (omega + i)) at omega = -1 - 0.5i
  const IntegralResult t = directional_transform(make_trig_decay(kPi / 4), {0.2, cplx(-1.0, -0.5), budget});
  CHECK(std::abs(t.value - cplx(0.063661977236758134, -0.12732395447351627)) < 1e-11);
}

TEST_CASE("rational entry against its exponential-integral value") {
  const TestFunction fn = make_rational(kPi / 4);
  for (const double theta : {0.0, 0.3, -0.6}) {
    const IntegralResult r = directional_transform(fn, {theta, -1.0, QuadratureBudget{}});
    CHECK(std::abs(r.value - kRationalAtMinusOne) < 1e-11);
    CHECK(std::abs(r.value - kRationalAtMinusOne) <= r.est_error);
  }
}

TEST_CASE("directional transform agrees with a Simpson reference") {
  const TestFunction fn = make_exp_sum({{1.0, -1.0}, {2.0, -2.0}}, kPi / 4);
  const cplx w(-0.5, 1.5);
  const cplx reference = oracle::directional(fn.eval, 0.5, w, 60.0, 60000);
  const IntegralResult r = directional_transform(fn, {0.5, w, QuadratureBudget{}});
  CHECK(std::abs(r.value - reference) < 1e-10);
}

TEST_CASE("points on or outside the half-plane are rejected") {
  const TestFunction fn = make_exp(1.0, kPi / 4);
  const QuadratureBudget budget;
  CHECK(kind_of([&] { directional_transform(fn, {0.0, 0.0, budget}); }) == ErrorKind::OutsideDomain);
  CHECK(kind_of([&] { directional_transform(fn, {0.0, cplx(-1.0, 3.0), budget}); }) == ErrorKind::OutsideDomain);
  CHECK(kind_of([&] { directional_transform(fn, {0.0, cplx(-1.0005, 0.0), budget}); }) ==
        ErrorKind::OutsideDomain);
  CHECK_NOTHROW(directional_transform(fn, {0.0, cplx(-1.002, 0.0), budget}));
  CHECK(kind_of([&] { directional_transform(fn, {1.0, -3.0, budget}); }) == ErrorKind::OutsideSector);
}

TEST_CASE("direction selection maximizes the margin") {
  const ConcatenatedTransform up(make_exp(1.0, kPi / 4));
  CHECK_THAT(up.select_direction(-2.0), WithinAbs(0.0, 1e-9));
  CHECK(kind_of([&] { up.select_direction(0.0); }) == ErrorKind::OutsideUnion);

  // margin cos(theta) - 2 sin(theta) is largest at the clamp -pi/4
  const ConcatenatedTransform down(make_exp(-1.0, kPi / 4));
  CHECK_THAT(down.select_direction(cplx(0.0, -2.0)), WithinAbs(-kPi / 4, 1e-9));
  CHECK_THAT(down.select_direction(cplx(0.0, 2.0)), WithinAbs(kPi / 4, 1e-9));

  const ConcatenatedTransform zero(make_zero(kPi / 4));
  CHECK(zero.select_direction(cplx(5.0, 5.0)) == 0.0);

  // interior maximizer: margin -cos(theta) - Re(omega e^{i theta}) with omega = -0.2i
  // is maximal at tan(theta) = 0.2 from above, ie theta = atan(0.2)
  CHECK_THAT(down.select_direction(cplx(0.0, 0.2)), WithinAbs(std::atan(0.2), 1e-8));
}

TEST_CASE("concatenated transform matches the oracle on the union") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const TestFunction fn = make_exp(cplx(-1.0, 1.0), kPi / 4);
  const ConcatenatedTransform ct(fn);
  int evaluated = 0;
  for (int k = 0; k < 60; ++k) {
    const cplx w(u(rng), u(rng));
    double theta;
    try {
      theta = ct.select_direction(w);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OutsideUnion);
      continue;
    }
    const IntegralResult r = ct(w, QuadratureBudget{});
    CHECK(std::abs(r.value - oracle::exp_transform(cplx(-1.0, 1.0), w)) < 1e-9);
    CHECK(ct.margin(theta, w) >= ct.min_margin());
    ++evaluated;
  }
  CHECK(evaluated > 20);
}

TEST_CASE("transform does not depend on the chosen direction") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(-kPi / 4, kPi / 4);
  const TestFunction fn = make_rational(kPi / 4);
  for (int k = 0; k < 20; ++k) {
    const double t1 = angle(rng), t2 = angle(rng);
    const cplx w = -2.0 + cplx(0.0, 0.5 * angle(rng));
    const ConsistencyReport rep = consistency_residual(fn, t1, t2, w, QuadratureBudget{});
    CHECK(rep.residual <= rep.est_error);
    CHECK(rep.residual < 1e-10);
  }
}

TEST_CASE("numeric transform is analytic: loop integrals vanish") {
  const ConcatenatedTransform ct(make_rational(kPi / 4));
  const QuadratureBudget budget;
  const cplx center(-2.0, 0.5);
  const double half = 0.5;
  const cplx corners[4] = {center + cplx(-half, -half), center + cplx(half, -half), center + cplx(half, half),
                           center + cplx(-half, half)};
  cplx loop = 0.0;
  for (int side = 0; side < 4; ++side) {
    const cplx a = corners[side], b = corners[(side + 1) % 4];
    loop += oracle::simpson([&](double s) { return ct(a + s * (b - a), budget).value * (b - a); }, 0.0, 1.0, 40);
  }
  CHECK(std::abs(loop) < 1e-9);
}

TEST_CASE("unified bound on the contour") {
  const SectorSpec spec = SectorSpec::make(kPi / 4, 1.0);
  const ContourGamma gamma = build_gamma(spec, -2.0);
  // -1 / (1 + 0.1 - 2 cos(pi/4))
  CHECK_THAT(unified_gamma_bound(spec, {0.1, 1.0}, gamma), WithinRel(3.1825488131305, 1e-12));
  CHECK(kind_of([&] { unified_gamma_bound(spec, {0.5, 1.0}, gamma); }) == ErrorKind::InvalidArgument);

  const TestFunction fn = make_exp(1.0, kPi / 4);
  const GammaBoundReport rep = gamma_bound_check(fn, fn.certificate(0.1), gamma, 40, QuadratureBudget{});
  CHECK(rep.worst_excess <= 0.0);
  CHECK(rep.max_abs_g <= gamma_envelope(fn, gamma));
  CHECK(gamma_envelope(fn, gamma) <= rep.bound);
}
