#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hbs/pythagoras.hpp"
#include "hbs/selftest.hpp"

using namespace hbs;

namespace {

bool close(cx a, cx b, double tol = 1e-10) { return std::abs(a - b) <= tol; }

std::vector<cx> abs2_laurent(const Poly& s) {
  int d = std::max(s.degree(), 0);
  std::vector<cx> t(2 * d + 1, cx(0.0));
  for (int k = -d; k <= d; ++k) {
    cx acc(0.0);
    for (int j = 0; j <= d; ++j) acc += std::conj(s.coeff(j)) * s.coeff(j + k);
    t[d + k] = acc;
  }
  return t;
}

}  // namespace

TEST_CASE("is_inner_rational: z, (1+z)/2, Blaschke factor") {
  CHECK(is_inner_rational({Poly({cx(0.0), cx(1.0)}), Poly::constant(cx(1.0))}, 256));
  CHECK_FALSE(is_inner_rational({Poly({cx(0.5), cx(0.5)}), Poly::constant(cx(1.0))}, 256));
  CHECK(is_inner_rational({Poly({cx(-0.5), cx(1.0)}), Poly({cx(1.0), cx(-0.5)})}, 256));
  CHECK_THROWS_AS(is_inner_rational({Poly({cx(0.0), cx(2.0)}), Poly::constant(cx(1.0))}, 256),
                  Error);
}

TEST_CASE("fejer_riesz: constants and the 1-z family") {
  Poly r1 = fejer_riesz({cx(1.0)});
  CHECK(r1.degree() == 0);
  CHECK(close(r1.coeff(0), cx(1.0)));

  // 2 - 2cos t = |1 - e^{it}|^2.
  Poly r2 = fejer_riesz({cx(-1.0), cx(2.0), cx(-1.0)});
  CHECK(close(r2.coeff(0), cx(1.0), 1e-9));
  CHECK(close(r2.coeff(1), cx(-1.0), 1e-9));

  // (2 - 2cos t)^2/4 = |(1-z)^2/2|^2: a double boundary zero.
  FejerRieszResult r3 =
      fejer_riesz_full({cx(0.25), cx(-1.0), cx(1.5), cx(-1.0), cx(0.25)});
  CHECK(close(r3.r.coeff(0), cx(0.5), 1e-8));
  CHECK(close(r3.r.coeff(1), cx(-1.0), 1e-8));
  CHECK(close(r3.r.coeff(2), cx(0.5), 1e-8));
  REQUIRE(r3.boundary_roots.entries.size() == 1);
  CHECK(r3.boundary_roots.entries[0].multiplicity == 2);
  CHECK(close(r3.boundary_roots.entries[0].location, cx(1.0), 1e-7));

  CHECK_THROWS_AS(fejer_riesz({cx(-0.6), cx(1.0), cx(-0.6)}), Error);  // dips negative
}

TEST_CASE("fejer_riesz involution on random |s|^2 with planted boundary zeros") {
  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    int deg = 1 + int(rng.uniform(0.0, 0.999) * 8);
    std::vector<cx> sc(deg + 1);
    for (auto& c : sc) c = rng.box(1.0);
    Poly s(std::move(sc));
    if (s.is_zero()) s = Poly::constant(cx(1.0));
    int mu = trial % 3;  // 0, 1, 2
    cx xi = rng.unit();
    if (mu > 0) s = s * Poly::from_roots({{xi, mu}});
    s = cx(1.0 / s.coeff_l2_norm()) * s;

    FejerRieszResult fr = fejer_riesz_full(abs2_laurent(s));
    CHECK(fr.residual <= 1e-8);
    if (mu > 0) {
      bool found = false;
      for (const auto& e : fr.boundary_roots.entries)
        if (std::abs(e.location - xi) < 1e-6 && e.multiplicity == mu) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("mate: b = 0, (1+z)/2, z(1+z)/2") {
  PythagoreanPair p0 = mate({Poly(), Poly::constant(cx(1.0))}, 256);
  CHECK(p0.n_total == 0);
  CHECK(p0.a1.degree() == 0);
  CHECK(close(p0.a.eval(cx(0.3)), cx(1.0), 1e-12));
  CHECK(p0.corona_min == doctest::Approx(1.0));

  PythagoreanPair p1 = mate({Poly({cx(0.5), cx(0.5)}), Poly::constant(cx(1.0))}, 1024);
  CHECK(p1.n_total == 1);
  CHECK(close(p1.a1.coeff(0), cx(-1.0), 1e-8));
  CHECK(close(p1.a1.coeff(1), cx(1.0)));
  CHECK(close(p1.a.eval(cx(0.0)), cx(0.5), 1e-9));  // a = (1-z)/2
  CHECK(close(p1.a.eval(cx(0.5)), cx(0.25), 1e-9));
  CHECK(p1.mate_residual <= 1e-8);
  CHECK(p1.corona_min > 0.0);

  // Multiplying b by z leaves the modulus data unchanged.
  PythagoreanPair p2 = mate({Poly({cx(0.0), cx(0.5), cx(0.5)}), Poly::constant(cx(1.0))}, 1024);
  CHECK(p2.n_total == 1);
  CHECK(close(p2.a.eval(cx(0.0)), cx(0.5), 1e-9));
  CHECK(p2.mate_residual <= 1e-8);
}

TEST_CASE("mate rejects inner input") {
  CHECK_THROWS_AS(mate({Poly({cx(0.0), cx(1.0)}), Poly::constant(cx(1.0))}, 256), Error);
  try {
    mate({Poly({cx(-0.5), cx(1.0)}), Poly({cx(1.0), cx(-0.5)})}, 256);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InnerInput);
  }
}

TEST_CASE("extract_unimodular classifies circle zeros") {
  RationalFn a1{Poly({cx(0.5), cx(-0.5)}), Poly::constant(cx(1.0))};  // (1-z)/2
  auto [p1, n1] = extract_unimodular(a1);
  CHECK(n1 == 1);
  CHECK(close(p1.coeff(0), cx(-1.0), 1e-9));

  RationalFn a2{Poly({cx(1.0), cx(-0.5)}), Poly::constant(cx(1.0))};  // (2-z)/2
  auto [p2, n2] = extract_unimodular(a2);
  CHECK(n2 == 0);
  CHECK(p2.degree() == 0);

  // (1-z)^2 (2-z)/8.
  Poly num = cx(0.125) * (Poly::from_roots({{cx(1.0), 2}}) * Poly({cx(2.0), cx(-1.0)}));
  auto [p3, n3] = extract_unimodular({num, Poly::constant(cx(1.0))});
  CHECK(n3 == 2);
  CHECK(close(p3.coeff(0), cx(1.0), 1e-7));
  CHECK(close(p3.coeff(1), cx(-2.0), 1e-7));
}

TEST_CASE("mate invariants on random ball rationals") {
  Rng rng(62);
  for (int trial = 0; trial < 8; ++trial) {
    // Random stable-denominator b scaled into the ball.
    int nd = 1 + int(rng.uniform(0.0, 0.999) * 4);
    std::vector<cx> nc(nd + 1);
    for (auto& c : nc) c = rng.box(1.0);
    Poly num(nc);
    int poles = int(rng.uniform(0.0, 2.999));
    std::vector<std::pair<cx, int>> ps;
    for (int i = 0; i < poles; ++i) ps.push_back({rng.annulus(1.7, 3.0), 1});
    Poly den = Poly::from_roots(ps);
    double sup = 0.0;
    for (int j = 0; j < 512; ++j) {
      cx z = std::polar(1.0, 2.0 * 3.14159265358979 * (j + 0.5) / 512);
      sup = std::max(sup, std::abs(num.eval(z) / den.eval(z)));
    }
    if (sup <= 1e-12) continue;
    RationalFn b{cx(rng.uniform(0.3, 0.95) / sup) * num, den};

    PythagoreanPair pair = mate(b, 2048);
    CHECK(pair.mate_residual <= 1e-8);
    cx a0 = pair.a.eval(cx(0.0));
    CHECK(a0.real() > 0.0);
    CHECK(std::abs(a0.imag()) <= 1e-12);
    CHECK(pair.outer_margin >= -1e-6);
    CHECK(pair.corona_min > 1e-6);
  }
}
