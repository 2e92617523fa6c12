#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hbs/boundary.hpp"
#include "hbs/selftest.hpp"

using namespace hbs;

namespace {

bool close(cx a, cx b, double tol = 1e-10) { return std::abs(a - b) <= tol; }

double coeff_dist(const AnalyticFn& f, const std::vector<cx>& expected) {
  double worst = 0.0;
  std::size_t len = std::max(f.taylor.size(), expected.size());
  for (std::size_t k = 0; k < len; ++k) {
    cx a = (k < f.taylor.size()) ? f.taylor[k] : cx(0.0);
    cx b = (k < expected.size()) ? expected[k] : cx(0.0);
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

}  // namespace

TEST_CASE("grid nodes avoid low-order roots of unity") {
  auto grid = BoundaryGrid::make(256);
  for (const auto& z : grid->nodes()) {
    CHECK(std::abs(z - cx(1.0)) > 1e-3);
    CHECK(std::abs(z + cx(1.0)) > 1e-3);
  }
  CHECK_THROWS_AS(BoundaryGrid::make(100), Error);
  CHECK_THROWS_AS(BoundaryGrid::make(32), Error);
}

TEST_CASE("sample: taylor and rational specs") {
  auto grid = BoundaryGrid::make(256);
  BoundaryFn one = sample(FunctionSpec::make_taylor({cx(1.0)}), grid);
  for (const auto& s : one.samples()) CHECK(close(s, cx(1.0)));

  BoundaryFn idf = sample(FunctionSpec::make_taylor({cx(0.0), cx(1.0)}), grid);
  for (int j = 0; j < 256; ++j) CHECK(close(idf.samples()[j], grid->nodes()[j]));

  BoundaryFn geo = sample(
      FunctionSpec::make_rational(Poly::constant(cx(1.0)), Poly({cx(1.0), cx(-0.5)})), grid);
  for (int j = 0; j < 256; ++j)
    CHECK(close(geo.samples()[j], cx(1.0) / (cx(1.0) - 0.5 * grid->nodes()[j])));

  // A pole essentially on a node is rejected; z = 1 itself is never a node,
  // so the half-bin grid samples 1/(z-1) without complaint.
  CHECK_THROWS_AS(
      sample(FunctionSpec::make_rational(Poly::constant(cx(1.0)),
                                         Poly({-grid->nodes()[7], cx(1.0)})),
             grid),
      Error);
  CHECK_NOTHROW(sample(
      FunctionSpec::make_rational(Poly::constant(cx(1.0)), Poly({cx(-1.0), cx(1.0)})), grid));
}

TEST_CASE("analytic_project: anti-analytic, polynomial, and cosine data") {
  auto grid = BoundaryGrid::make(256);
  std::vector<cx> conj_samples(256);
  for (int j = 0; j < 256; ++j) conj_samples[j] = std::conj(grid->nodes()[j]);
  AnalyticFn a = analytic_project(BoundaryFn(grid, conj_samples));
  CHECK(hardy_norm(a) < 1e-12);
  CHECK(a.tail_mass == doctest::Approx(1.0).epsilon(1e-12));

  AnalyticFn b = analytic_project(sample(FunctionSpec::make_taylor({cx(1.0), cx(1.0)}), grid));
  CHECK(coeff_dist(b, {cx(1.0), cx(1.0)}) < 1e-12);
  CHECK(b.tail_mass < 1e-12);

  std::vector<cx> cosine(256);
  for (int j = 0; j < 256; ++j) cosine[j] = grid->nodes()[j] + std::conj(grid->nodes()[j]);
  AnalyticFn c = analytic_project(BoundaryFn(grid, cosine));
  CHECK(coeff_dist(c, {cx(0.0), cx(1.0)}) < 1e-12);
  CHECK(c.tail_mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("toeplitz_coanalytic examples") {
  auto grid = BoundaryGrid::make(256);
  BoundaryFn one = sample(FunctionSpec::make_taylor({cx(1.0)}), grid);
  BoundaryFn onepz = sample(FunctionSpec::make_taylor({cx(1.0), cx(1.0)}), grid);
  BoundaryFn zf = sample(FunctionSpec::make_taylor({cx(0.0), cx(1.0)}), grid);
  BoundaryFn zm1 = sample(FunctionSpec::make_taylor({cx(-1.0), cx(1.0)}), grid);

  CHECK(coeff_dist(toeplitz_coanalytic(one, onepz), {cx(1.0), cx(1.0)}) < 1e-12);
  CHECK(hardy_norm(toeplitz_coanalytic(zf, one)) < 1e-12);
  CHECK(coeff_dist(toeplitz_coanalytic(zm1, zf), {cx(1.0), cx(-1.0)}) < 1e-12);

  auto other = BoundaryGrid::make(128);
  BoundaryFn small = sample(FunctionSpec::make_taylor({cx(1.0)}), other);
  CHECK_THROWS_AS(toeplitz_coanalytic(one, small), Error);
}

TEST_CASE("herglotz: constants and cosine weights") {
  auto grid = BoundaryGrid::make(512);
  BoundaryFn w1 = sample(FunctionSpec::make_taylor({cx(1.0)}), grid);
  CHECK(coeff_dist(herglotz(w1), {cx(1.0)}) < 1e-12);

  std::vector<cx> w2(512), w3(512);
  for (int j = 0; j < 512; ++j) {
    double cost = grid->nodes()[j].real();
    w2[j] = cx(1.0 + cost);
    w3[j] = cx(2.0 - 2.0 * cost);
  }
  CHECK(coeff_dist(herglotz(BoundaryFn(grid, w2)), {cx(1.0), cx(1.0)}) < 1e-11);
  CHECK(coeff_dist(herglotz(BoundaryFn(grid, w3)), {cx(2.0), cx(-2.0)}) < 1e-11);

  std::vector<cx> neg(512, cx(-1.0));
  CHECK_THROWS_AS(herglotz(BoundaryFn(grid, neg)), Error);
}

TEST_CASE("cauchy_times_p: zero, constants, and the pipeline self-check") {
  auto grid = BoundaryGrid::make(4096);
  BoundaryFn zero = sample(FunctionSpec::make_taylor({}), grid);
  CauchyTimesPResult r0 = cauchy_times_p(zero, Poly::constant(cx(1.0)));
  CHECK(hardy_norm(r0.f) < 1e-12);

  BoundaryFn one = sample(FunctionSpec::make_taylor({cx(1.0)}), grid);
  CauchyTimesPResult r1 = cauchy_times_p(one, Poly::constant(cx(1.0)));
  CHECK(coeff_dist(r1.f, {cx(2.0)}) < 1e-12);

  // F = F0 + q with q constant: herglotz(1) = 1, so q = 1 here.
  AnalyticFn f0 = herglotz(one);
  CHECK(coeff_dist(r1.f.minus(f0), {cx(1.0)}) < 1e-11);

  CauchyTimesPResult r2 = cauchy_times_p(one, Poly({cx(-1.0), cx(1.0)}));
  CHECK(r2.quotient_tail_rel <= 1e-8);
}

TEST_CASE("eval_in_disk and hardy norms") {
  AnalyticFn lin;
  lin.taylor = {cx(1.0), cx(1.0)};
  CHECK(close(eval_in_disk(lin, cx(0.0)).value, cx(1.0)));

  AnalyticFn idf;
  idf.taylor = {cx(0.0), cx(1.0)};
  CHECK(close(eval_in_disk(idf, cx(0.0, 0.5)).value, cx(0.0, 0.5)));

  AnalyticFn geo;
  for (int k = 0; k < 64; ++k) geo.taylor.push_back(cx(std::pow(0.5, k)));
  CHECK(close(eval_in_disk(geo, cx(0.5)).value, cx(4.0 / 3.0), 1e-12));
  CHECK(hardy_norm(geo) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-10));
  CHECK_THROWS_AS(eval_in_disk(geo, cx(0.9999995)), Error);

  AnalyticFn pyth;
  pyth.taylor = {cx(3.0), cx(4.0)};
  CHECK(hardy_norm(pyth) == doctest::Approx(5.0));
  CHECK(hardy_norm(AnalyticFn{{cx(1.0)}, 0.0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("outerness: root route and boundary zeros") {
  CHECK_FALSE(outerness_test(FunctionSpec::make_taylor({cx(0.0), cx(1.0)})).outer);
  CHECK(outerness_test(FunctionSpec::make_taylor({cx(1.0), cx(0.5)})).outer);
  CHECK(outerness_test(FunctionSpec::make_taylor({cx(0.5), cx(0.5)})).outer);
  CHECK_THROWS_AS(outerness_test(FunctionSpec::make_taylor({})), Error);
}

TEST_CASE("property: Parseval splits the grid norm") {
  Rng rng(51);
  auto grid = BoundaryGrid::make(256);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cx> samples(256);
    for (auto& s : samples) s = rng.box(1.0);
    BoundaryFn f(grid, samples);
    AnalyticFn proj = analytic_project(f);
    double lhs = hardy_norm(proj) * hardy_norm(proj) + proj.tail_mass * proj.tail_mass;
    double rhs = f.norm() * f.norm();
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("property: herglotz positivity and normalization") {
  Rng rng(52);
  auto grid = BoundaryGrid::make(512);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cx> w(512);
    double mean = 0.0;
    for (auto& s : w) {
      s = cx(rng.uniform(0.0, 2.0));
      mean += s.real();
    }
    mean /= 512;
    AnalyticFn f0 = herglotz(BoundaryFn(grid, w));
    CHECK(close(eval_in_disk(f0, cx(0.0)).value, cx(mean), 1e-10));
    for (int probe = 0; probe < 100; ++probe) {
      cx z = rng.annulus(0.0, 0.99);
      CHECK(eval_in_disk(f0, z).value.real() >= -1e-9);
    }
  }
}

TEST_CASE("property: cauchy consistency for nonnegative h and p = 1") {
  Rng rng(53);
  auto grid = BoundaryGrid::make(512);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cx> h(512);
    for (auto& s : h) s = cx(rng.uniform(0.0, 3.0));
    BoundaryFn hb(grid, h);
    AnalyticFn f = cauchy_times_p(hb, Poly::constant(cx(1.0))).f;
    AnalyticFn f0 = herglotz(hb);
    AnalyticFn diff = f.minus(f0);
    CHECK(std::abs(diff.coeff(0) - hb.c(0)) < 1e-9);
    for (int k = 1; k < 32; ++k) CHECK(std::abs(diff.coeff(k)) < 1e-9);
  }
}

TEST_CASE("property: grid doubling stability on rational data") {
  std::vector<FunctionSpec> battery = {
      FunctionSpec::make_rational(Poly::constant(cx(1.0)), Poly({cx(1.0), cx(-0.5)})),
      FunctionSpec::make_rational(Poly({cx(2.0), cx(1.0)}), Poly({cx(2.0), cx(-1.0)})),
      FunctionSpec::make_taylor({cx(1.0), cx(0.25), cx(0.0, -0.5)}),
  };
  auto g1 = BoundaryGrid::make(2048);
  auto g2 = BoundaryGrid::make(4096);
  for (const auto& spec : battery) {
    AnalyticFn p1 = analytic_project(sample(spec, g1));
    AnalyticFn p2 = analytic_project(sample(spec, g2));
    double worst = 0.0;
    for (int k = 0; k < 1024; ++k) worst = std::max(worst, std::abs(p1.coeff(k) - p2.coeff(k)));
    CHECK(worst < 1e-8);

    auto abs_weight = [&spec](const GridPtr& g) {
      BoundaryFn f = sample(spec, g);
      std::vector<cx> w(f.size());
      for (int j = 0; j < f.size(); ++j) w[j] = cx(std::abs(f.samples()[j]));
      return BoundaryFn(g, std::move(w));
    };
    AnalyticFn h1 = herglotz(abs_weight(g1));
    AnalyticFn h2 = herglotz(abs_weight(g2));
    worst = 0.0;
    for (int k = 0; k < 1024; ++k) worst = std::max(worst, std::abs(h1.coeff(k) - h2.coeff(k)));
    CHECK(worst < 1e-6);
  }
}
