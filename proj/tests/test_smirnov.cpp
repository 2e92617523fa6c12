#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hbs/selftest.hpp"
#include "hbs/smirnov.hpp"

using namespace hbs;

namespace {

bool close(cx a, cx b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

Poly zm1() { return Poly({cx(-1.0), cx(1.0)}); }
Poly zm1sq() { return Poly({cx(1.0), cx(-2.0), cx(1.0)}); }
Poly z2m1() { return Poly({cx(-1.0), cx(0.0), cx(1.0)}); }

FactorParams fast_params() {
  FactorParams p;
  p.grid_n = 1024;
  p.adaptive = true;
  return p;
}

}  // namespace

TEST_CASE("partial fractions: residue values against the probe identity") {
  // Constant p: empty table.
  PartialFractionTable none = partial_fraction_table(Poly::constant(cx(2.0)));
  CHECK(none.terms.empty());

  // p = z-1: the identity forces p_{1,1} = 1.
  PartialFractionTable t1 = partial_fraction_table(zm1());
  REQUIRE(t1.terms.size() == 1);
  REQUIRE(t1.terms[0].polys.size() == 1);
  CHECK(t1.terms[0].polys[0].degree() == 0);
  CHECK(close(t1.terms[0].polys[0].coeff(0), cx(1.0), 1e-12));
  CHECK(t1.probe_residual <= 1e-10);

  // p = (z-1)(z+1): first-order terms (z+1)/2 and (z-1)/2.
  PartialFractionTable t2 = partial_fraction_table(z2m1());
  REQUIRE(t2.terms.size() == 2);
  CHECK(t2.probe_residual <= 1e-10);
  for (const auto& term : t2.terms) {
    REQUIRE(term.polys.size() == 1);
    if (std::abs(term.root - cx(1.0)) < 1e-6) {
      CHECK(close(term.polys[0].coeff(0), cx(0.5), 1e-10));
      CHECK(close(term.polys[0].coeff(1), cx(0.5), 1e-10));
    } else {
      CHECK(close(term.polys[0].coeff(0), cx(-0.5), 1e-10));
      CHECK(close(term.polys[0].coeff(1), cx(0.5), 1e-10));
    }
  }

  // p = (z-1)^2: p_{1,1} = z, p_{1,2} = 1-z.
  PartialFractionTable t3 = partial_fraction_table(zm1sq());
  REQUIRE(t3.terms.size() == 1);
  REQUIRE(t3.terms[0].polys.size() == 2);
  CHECK(close(t3.terms[0].polys[0].coeff(0), cx(0.0), 1e-10));
  CHECK(close(t3.terms[0].polys[0].coeff(1), cx(1.0), 1e-10));
  CHECK(close(t3.terms[0].polys[1].coeff(0), cx(1.0), 1e-10));
  CHECK(close(t3.terms[0].polys[1].coeff(1), cx(-1.0), 1e-10));
  CHECK(t3.probe_residual <= 1e-10);

  CHECK_THROWS_AS(partial_fraction_table(Poly({cx(-0.5), cx(1.0)})), Error);
}

TEST_CASE("weight: modulus samples") {
  auto grid = BoundaryGrid::make(256);
  BoundaryFn one = sample(FunctionSpec::make_taylor({cx(1.0)}), grid);
  BoundaryFn w = weight(one, zm1());
  for (int j = 0; j < 256; ++j)
    CHECK(w.samples()[j].real() ==
          doctest::Approx(std::abs(grid->nodes()[j] - cx(1.0))).epsilon(1e-12));

  BoundaryFn zero = sample(FunctionSpec::make_taylor({}), grid);
  CHECK(weight(zero, zm1()).max_abs() == 0.0);
}

TEST_CASE("correction polynomial: constants and the vanishing q of p = z-1") {
  auto grid = BoundaryGrid::make(2048);
  BoundaryFn one = sample(FunctionSpec::make_taylor({cx(1.0)}), grid);

  CorrectionResult c1 = correction_poly(one, Poly::constant(cx(1.0)));
  REQUIRE(c1.q.degree() == 0);
  CHECK(close(c1.q.coeff(0), cx(1.0), 1e-10));
  CHECK(c1.route_gap <= 1e-10);

  // For p = z-1 and h = 1 the two integral families cancel exactly: q = 0.
  CorrectionResult c2 = correction_poly(one, zm1());
  CHECK(c2.q.coeff_inf_norm() <= 1e-9);
  CHECK(c2.q_moment.coeff_inf_norm() <= 1e-9);
  CHECK(c2.route_gap <= 1e-9);

  BoundaryFn zero = sample(FunctionSpec::make_taylor({}), grid);
  CorrectionResult c0 = correction_poly(zero, zm1());
  CHECK(c0.q.coeff_inf_norm() <= 1e-14);
}

TEST_CASE("correction polynomial: coarse grids mismatch, fine grids agree") {
  FunctionSpec h = FunctionSpec::make_rational(Poly({cx(2.0), cx(1.0)}), Poly({cx(2.0), cx(-1.0)}));
  auto coarse = BoundaryGrid::make(64);
  CHECK_THROWS_AS(correction_poly(sample(h, coarse), zm1sq()), Error);
  auto fine = BoundaryGrid::make(4096);
  CHECK_NOTHROW(correction_poly(sample(h, fine), zm1sq()));
}

TEST_CASE("rescale: zero, unit, 4z") {
  CHECK(rescale(Poly()) == doctest::Approx(1.0));
  CHECK(rescale(Poly::constant(cx(1.0))) == doctest::Approx(0.5));
  CHECK(rescale(Poly({cx(0.0), cx(4.0)})) == doctest::Approx(0.125).epsilon(1e-10));
}

TEST_CASE("factor_h2: the constant worked example in closed form") {
  FactorParams fp = fast_params();
  SmirnovFactorization fact =
      factor_h2(FunctionSpec::make_taylor({cx(1.0)}), Poly::constant(cx(1.0)), fp);
  // w = c, F0 = c, F = 2c, q = c, c = 1/2, Q = 1/2, alpha = 1/6, u = 1/3,
  // v = -2/3; u/(p v + 1) = (1/3)/(1/3) = 1.
  CHECK(fact.scale == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(close(fact.u.taylor[0], cx(1.0 / 3.0), 1e-9));
  CHECK(close(fact.v.taylor[0], cx(-2.0 / 3.0), 1e-9));
  for (int k = 1; k < 8; ++k) {
    CHECK(std::abs(fact.u.coeff(k)) < 1e-10);
    CHECK(std::abs(fact.v.coeff(k)) < 1e-10);
  }
  CHECK(fact.certs.residual <= 1e-10);
  CHECK(fact.certs.min_q == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(fact.certs.pass(1e-6));
}

TEST_CASE("factor_h2: h = 0 degenerates to u = v = 0") {
  FactorParams fp = fast_params();
  SmirnovFactorization fact = factor_h2(FunctionSpec::make_taylor({}), zm1(), fp);
  CHECK(fact.degenerate);
  CHECK(hardy_norm(fact.u) == 0.0);
  CHECK(hardy_norm(fact.v) == 0.0);
  CHECK(fact.certs.residual == 0.0);
  CHECK(fact.certs.pass(1e-6));
}

TEST_CASE("factor_h2: p = z-1 and h = 1 end to end") {
  FactorParams fp = fast_params();
  SmirnovFactorization fact = factor_h2(FunctionSpec::make_taylor({cx(1.0)}), zm1(), fp);
  CHECK(fact.certs.residual <= 1e-6 * (1.0 + fact.certs.max_abs_h));
  CHECK(fact.certs.sup_phq <= 1.0 + 1e-6);
  CHECK(fact.certs.min_q >= 0.5 - 1e-9);
  CHECK(fact.certs.sup_pu < 1e3);
  CHECK(fact.certs.sup_pv < 1e3);
  CHECK(fact.certs.tail_u <= 1e-6);
  CHECK(fact.certs.tail_v <= 1e-6);
  CHECK(fact.certs.tail_fp <= 1e-6);
  CHECK(fact.certs.denom_outer_structural);
  CHECK(fact.certs.denom_outer_jensen.outer);
  CHECK(fact.certs.pass(1e-6));
}

TEST_CASE("factor_h2 rejects non-H2 input") {
  FactorParams fp = fast_params();
  fp.adaptive = false;
  // conj(z) boundary data: purely anti-analytic.
  auto grid = BoundaryGrid::make(fp.grid_n);
  std::vector<cx> s(fp.grid_n);
  for (int j = 0; j < fp.grid_n; ++j) s[j] = std::conj(grid->nodes()[j]);
  FunctionSpec spec = FunctionSpec::make_samples(fp.grid_n, s);
  try {
    factor_h2(spec, zm1(), fp);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotH2);
  }
}

TEST_CASE("factor_hb: polynomial short-circuit and the a1 case") {
  PythagoreanPair pair = mate({Poly({cx(0.5), cx(0.5)}), Poly::constant(cx(1.0))}, 1024);
  FactorParams fp = fast_params();

  HbSmirnovResult poly_res =
      factor_hb(FunctionSpec::make_taylor({cx(2.0), cx(0.0), cx(1.0)}), pair, fp);
  CHECK(poly_res.short_circuit);
  CHECK(poly_res.numerator.r.is_zero());
  CHECK((poly_res.denominator.r - Poly::constant(cx(1.0))).is_zero());
  CHECK(poly_res.residual <= 1e-9 * (1.0 + poly_res.max_abs_f));
  CHECK(poly_res.denominator_cyclic.verdict);

  // f = a1: g = 1, polyPart = 0; composition of the h = 1 factorization.
  HbSmirnovResult a1_res = factor_hb(FunctionSpec::make_taylor(pair.a1.coeffs()), pair, fp);
  CHECK(a1_res.numerator.r.is_zero());
  CHECK(a1_res.residual <= 1e-6 * (1.0 + a1_res.max_abs_f));
  CHECK(a1_res.denominator_cyclic.verdict);
  CHECK(a1_res.denominator_cyclic.verdict_boundary);

  // Full pipeline: f = a1/(1 - z/2) + 1.
  Poly den({cx(1.0), cx(-0.5)});
  Poly num = pair.a1 + den;
  HbSmirnovResult full = factor_hb(FunctionSpec::make_rational(num, den), pair, fp);
  CHECK_FALSE(full.short_circuit);
  CHECK(full.numerator.r.is_zero());
  CHECK(full.residual <= 1e-6 * (1.0 + full.max_abs_f));
  CHECK(full.denominator_cyclic.verdict);

  // Membership precondition.
  CHECK_THROWS_AS(
      factor_hb(FunctionSpec::make_rational(Poly::constant(cx(1.0)), Poly({cx(1.0), cx(-0.999)})),
                pair, fp),
      Error);
}

TEST_CASE("combine: identities and a random pair") {
  PythagoreanPair pair = mate({Poly({cx(0.5), cx(0.5)}), Poly::constant(cx(1.0))}, 1024);
  FactorParams fp = fast_params();

  Poly den({cx(1.0), cx(-0.5)});
  HbSmirnovResult r1 = factor_hb(FunctionSpec::make_rational(pair.a1 + den, den), pair, fp);
  HbFraction f1;
  f1.num.g_tilde = r1.numerator.g_tilde.plus(r1.denominator.g_tilde.times_poly(r1.poly_part));
  f1.num.r = r1.poly_part;
  f1.den = r1.denominator;

  // Additive identity (0, 1) and multiplicative identity (1, 1).
  HbFraction zero_frac;
  zero_frac.den.r = Poly::constant(cx(1.0));
  HbFraction one_frac;
  one_frac.num.r = Poly::constant(cx(1.0));
  one_frac.den.r = Poly::constant(cx(1.0));

  CombineCerts certs;
  HbFraction sum = combine(f1, zero_frac, CombineMode::Sum, pair, fp, &certs);
  CHECK(certs.pass);
  auto grid = BoundaryGrid::make(fp.grid_n);
  std::vector<cx> before_n = f1.num.trace(pair, *grid), after_n = sum.num.trace(pair, *grid);
  std::vector<cx> before_d = f1.den.trace(pair, *grid), after_d = sum.den.trace(pair, *grid);
  for (int j = 0; j < fp.grid_n; j += 37) {
    CHECK(close(after_n[j], before_n[j], 1e-8));
    CHECK(close(after_d[j], before_d[j], 1e-8));
  }

  HbFraction prod = combine(f1, one_frac, CombineMode::Product, pair, fp, &certs);
  CHECK(certs.pass);
  std::vector<cx> pn = prod.num.trace(pair, *grid);
  for (int j = 0; j < fp.grid_n; j += 37) CHECK(close(pn[j], before_n[j], 1e-8));

  // Two genuinely different factored rationals.
  Poly den2({cx(1.0), cx(0.4)});
  HbSmirnovResult r2 = factor_hb(
      FunctionSpec::make_rational(cx(0.7) * pair.a1 + Poly::constant(cx(0.3)) * den2, den2), pair,
      fp);
  HbFraction f2;
  f2.num.g_tilde = r2.numerator.g_tilde.plus(r2.denominator.g_tilde.times_poly(r2.poly_part));
  f2.num.r = r2.poly_part;
  f2.den = r2.denominator;

  combine(f1, f2, CombineMode::Sum, pair, fp, &certs);
  CHECK(certs.pass);
  CHECK(certs.residual <= 1e-6 * 10);
  combine(f1, f2, CombineMode::Product, pair, fp, &certs);
  CHECK(certs.pass);
}

TEST_CASE("verify: clean pass and tamper detection") {
  FactorParams fp = fast_params();
  FunctionSpec one = FunctionSpec::make_taylor({cx(1.0)});
  SmirnovFactorization fact = factor_h2(one, zm1(), fp);

  VerifyReport clean = verify(fact, one, 1e-6, fp);
  CHECK(clean.pass);
  CHECK(clean.grid_n >= 2 * fact.grid_n);

  SmirnovFactorization bad = fact;
  bad.u.taylor[0] += cx(1e-3);
  VerifyReport rep = verify(bad, one, 1e-6, fp);
  CHECK_FALSE(rep.pass);
  bool residual_flagged = false;
  for (const auto& line : rep.lines)
    if (line.name == "reconstruction" && !line.pass) residual_flagged = true;
  CHECK(residual_flagged);

  // Degenerate verify.
  SmirnovFactorization zf = factor_h2(FunctionSpec::make_taylor({}), zm1(), fp);
  VerifyReport zrep = verify(zf, FunctionSpec::make_taylor({}), 1e-6, fp);
  CHECK(zrep.pass);
}
