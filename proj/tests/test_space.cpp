#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hbs/selftest.hpp"
#include "hbs/space.hpp"

using namespace hbs;

namespace {

bool close(cx a, cx b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

PythagoreanPair pair_zm1() {
  return mate({Poly({cx(0.5), cx(0.5)}), Poly::constant(cx(1.0))}, 1024);
}

PythagoreanPair pair_zm1_sq() {
  // Mate whose a1 = (z-1)^2: b is the spectral factor of 1 - |(1-z)^2/4|^2.
  Poly a3 = cx(0.25) * Poly({cx(1.0), cx(-2.0), cx(1.0)});
  std::vector<cx> t = {cx(-1.0 / 16), cx(0.25), cx(-0.375 + 1.0), cx(0.25), cx(-1.0 / 16)};
  // t = 1 - |a3|^2; |a3|^2 has Laurent coefficients [1/16, -1/4, 3/8, -1/4, 1/16].
  Poly b3 = fejer_riesz(t);
  return mate({b3, Poly::constant(cx(1.0))}, 1024);
}

SpaceParams params_1024() {
  SpaceParams p;
  p.grid_n = 1024;
  return p;
}

}  // namespace

TEST_CASE("decompose: constants, z, and z^2 against hand jets") {
  PythagoreanPair p1 = pair_zm1();
  SpaceParams sp = params_1024();

  // f = 1: constants are their own interpolants.
  HbDecomposition d1 = decompose(FunctionSpec::make_taylor({cx(1.0)}), p1, sp);
  CHECK(hardy_norm(d1.g) < 1e-10);
  CHECK(close(d1.poly_part.coeff(0), cx(1.0)));

  // f = z = (z-1)*1 + 1.
  HbDecomposition d2 = decompose(FunctionSpec::make_taylor({cx(0.0), cx(1.0)}), p1, sp);
  CHECK(close(d2.poly_part.coeff(0), cx(1.0), 1e-10));
  CHECK(close(d2.g.taylor[0], cx(1.0), 1e-10));
  CHECK(hb_norm(d2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

  // f = z^2 with a1 = (z-1)^2: polyPart = 2z-1 and g = 1.
  PythagoreanPair p2 = pair_zm1_sq();
  REQUIRE(p2.n_total == 2);
  HbDecomposition d3 = decompose(FunctionSpec::make_taylor({cx(0.0), cx(0.0), cx(1.0)}), p2, sp);
  CHECK(close(d3.poly_part.coeff(0), cx(-1.0), 1e-8));
  CHECK(close(d3.poly_part.coeff(1), cx(2.0), 1e-8));
  CHECK(close(d3.g.taylor[0], cx(1.0), 1e-8));

  // f = a1: g = 1, polyPart = 0, norm 1.
  HbDecomposition d4 = decompose(FunctionSpec::make_taylor(p1.a1.coeffs()), p1, sp);
  CHECK(close(d4.g.taylor[0], cx(1.0), 1e-10));
  CHECK(d4.poly_part.coeff_inf_norm() < 1e-10);
  CHECK(hb_norm(d4) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("membership: polynomials in, near-boundary poles out") {
  PythagoreanPair p1 = pair_zm1();
  auto [ok1, r1] = membership_test(FunctionSpec::make_taylor({cx(1.0), cx(2.0), cx(3.0)}), p1,
                                   1e-6, 1024);
  CHECK(ok1);

  // 1/(1 - 0.999 z): analytic but with spectral mass far beyond the grid.
  auto [ok2, r2] = membership_test(
      FunctionSpec::make_rational(Poly::constant(cx(1.0)), Poly({cx(1.0), cx(-0.999)})), p1,
      1e-6, 1024);
  CHECK_FALSE(ok2);

  // a1 * (bounded taylor) is a member by construction.
  Poly g({cx(0.5), cx(0.25), cx(0.125)});
  Poly f = p1.a1 * g;
  auto [ok3, r3] = membership_test(FunctionSpec::make_taylor(f.coeffs()), p1, 1e-6, 1024);
  CHECK(ok3);
  CHECK(r3 <= 1e-8);
}

TEST_CASE("decompose round trip and idempotence") {
  PythagoreanPair p2 = pair_zm1_sq();
  SpaceParams sp = params_1024();
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cx> gc(6);
    for (auto& c : gc) c = rng.box(1.0);
    Poly g(gc);
    Poly q({rng.box(1.0), rng.box(1.0)});
    Poly f = p2.a1 * g + q;
    HbDecomposition d = decompose(FunctionSpec::make_taylor(f.coeffs()), p2, sp);

    double gdiff = 0.0;
    for (int k = 0; k < 8; ++k) gdiff = std::max(gdiff, std::abs(d.g.coeff(k) - g.coeff(k)));
    CHECK(gdiff < 1e-7);
    CHECK((d.poly_part - q).coeff_inf_norm() < 1e-7);

    // Idempotence: reassemble from the recovered parts and decompose again.
    Poly grec(std::vector<cx>(d.g.taylor.begin(), d.g.taylor.begin() + 8));
    Poly frec = p2.a1 * grec + d.poly_part;
    HbDecomposition d2 = decompose(FunctionSpec::make_taylor(frec.coeffs()), p2, sp);
    double again = 0.0;
    for (int k = 0; k < 8; ++k) again = std::max(again, std::abs(d2.g.coeff(k) - d.g.coeff(k)));
    CHECK(again < 1e-9);
    CHECK((d2.poly_part - d.poly_part).coeff_inf_norm() < 1e-9);

    double expect = std::hypot(g.coeff_l2_norm(), q.coeff_l2_norm());
    CHECK(std::abs(hb_norm(d) - expect) < 1e-7);
  }
}

TEST_CASE("is_multiplier: polynomials yes, bounded products yes, rough series no") {
  PythagoreanPair p1 = pair_zm1();
  SpaceParams sp = params_1024();

  MultiplierCert poly_cert =
      is_multiplier(FunctionSpec::make_taylor({cx(1.0), cx(0.0), cx(2.0)}), p1, sp);
  CHECK(poly_cert.verdict);

  // (z-1) * (taylor with coefficients 1/(k+1)): a1*gtilde bounded on the grid.
  std::vector<cx> slow(512);
  for (int k = 0; k < 512; ++k) slow[k] = cx(1.0 / (k + 1.0));
  Poly base(slow);
  Poly phi = p1.a1 * base;
  MultiplierCert log_cert = is_multiplier(FunctionSpec::make_taylor(phi.coeffs()), p1, sp);
  CHECK(log_cert.verdict);

  // Coefficients 1/sqrt(k+1) give partial sums that blow up near z = 1; the
  // decomposition tail grows with the truncation and membership fails.
  std::vector<cx> rough(2000);
  for (int k = 0; k < 2000; ++k) rough[k] = cx(1.0 / std::sqrt(k + 1.0));
  MultiplierCert rough_cert = is_multiplier(FunctionSpec::make_taylor(rough), p1, sp);
  CHECK_FALSE(rough_cert.verdict);
}

TEST_CASE("is_cyclic: units, a1, z, and route equivalence") {
  PythagoreanPair p1 = pair_zm1();
  SpaceParams sp = params_1024();

  CyclicityCert unit = is_cyclic(FunctionSpec::make_taylor({cx(1.0)}), p1, sp);
  CHECK(unit.verdict);
  CHECK(unit.verdict_boundary);

  CyclicityCert a1c = is_cyclic(FunctionSpec::make_taylor(p1.a1.coeffs()), p1, sp);
  CHECK_FALSE(a1c.verdict);
  CHECK_FALSE(a1c.verdict_boundary);

  // z = (z-1) + 1: gcd(a1, 1) = 1 but z is inner, not outer.
  CyclicityCert zc = is_cyclic(FunctionSpec::make_taylor({cx(0.0), cx(1.0)}), p1, sp);
  CHECK_FALSE(zc.verdict);
  CHECK(zc.gcd_witness.degree() == 0);
  CHECK_FALSE(zc.outer.outer);

  CHECK_THROWS_AS(
      is_cyclic(FunctionSpec::make_rational(Poly::constant(cx(1.0)), Poly({cx(1.0), cx(-0.999)})),
                p1, sp),
      Error);
}

TEST_CASE("kernel_eval: Szego limit and the (1+z)/2 value") {
  RationalFn zero{Poly(), Poly::constant(cx(1.0))};
  CHECK(close(kernel_eval(zero, cx(0.0), cx(0.0)), cx(1.0)));
  CHECK(close(kernel_eval(zero, cx(0.5), cx(0.25)), cx(1.0) / (cx(1.0) - 0.5 * 0.25)));

  RationalFn half{Poly({cx(0.5), cx(0.5)}), Poly::constant(cx(1.0))};
  CHECK(close(kernel_eval(half, cx(0.0), cx(0.5)), cx(0.625)));
  // b(0) = 0 makes the kernel constant 1 in z.
  RationalFn zb{Poly({cx(0.0), cx(1.0)}), Poly::constant(cx(1.0))};
  CHECK(close(kernel_eval(zb, cx(0.0), cx(0.3, 0.2)), cx(1.0)));
}
