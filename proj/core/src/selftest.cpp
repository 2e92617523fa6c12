#include "hbs/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

namespace hbs {

namespace {
constexpr double kPi = std::numbers::pi;
}

// ---------------------------------------------------------------------------
// Rng (splitmix64; bit-identical everywhere)
// ---------------------------------------------------------------------------

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  double u = double(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

cx Rng::box(double half_width) {
  return cx(uniform(-half_width, half_width), uniform(-half_width, half_width));
}

cx Rng::annulus(double r_lo, double r_hi) {
  return std::polar(uniform(r_lo, r_hi), uniform(0.0, 2.0 * kPi));
}

cx Rng::unit() { return std::polar(1.0, uniform(0.0, 2.0 * kPi)); }

// ---------------------------------------------------------------------------
// Battery material
// ---------------------------------------------------------------------------

namespace {

struct Tracker {
  double margin = 1e300;
  bool pass = true;
  std::ostringstream detail;

  // value must stay <= threshold
  void upper(double value, double threshold, const char* what) {
    double slack = threshold - value;
    if (slack < margin) margin = slack;
    if (value > threshold && pass) {
      pass = false;
      detail << what << " = " << value << " exceeds " << threshold;
    }
  }
  // value must stay >= threshold
  void lower(double value, double threshold, const char* what) { upper(threshold, value, what); }
  void require(bool ok, const char* what) {
    if (!ok && pass) {
      pass = false;
      detail << what << " failed";
    }
  }
  CriterionResult finish(int id, const std::string& name, const std::string& extra = "") {
    CriterionResult r;
    r.id = id;
    r.name = name;
    r.pass = pass;
    r.margin = (margin == 1e300) ? 0.0 : margin;
    r.detail = pass ? extra : detail.str();
    return r;
  }
};

Poly poly_z() { return Poly::variable(); }

RationalFn rational_const(cx c) { return {Poly::constant(c), Poly::constant(cx(1.0))}; }

/// Laurent coefficients of |s|^2 by coefficient autocorrelation.
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

/// Laurent coefficients of 1 - |a|^2 for a polynomial a.
std::vector<cx> one_minus_abs2(const Poly& a) {
  std::vector<cx> t = abs2_laurent(a);
  int d = (static_cast<int>(t.size()) - 1) / 2;
  for (auto& c : t) c = -c;
  t[d] += 1.0;
  return t;
}

RationalFn random_ball_rational(Rng& rng, int max_deg, double target_sup) {
  int nd = 1 + int(rng.uniform(0.0, 0.999) * max_deg);
  std::vector<cx> nc(nd + 1);
  for (auto& c : nc) c = rng.box(1.0);
  Poly num(std::move(nc));
  int poles = int(rng.uniform(0.0, 3.999));
  std::vector<std::pair<cx, int>> ps;
  for (int i = 0; i < poles; ++i) ps.push_back({rng.annulus(1.6, 3.0), 1});
  Poly den = Poly::from_roots(ps);
  // Rescale into the ball.
  double sup = 0.0;
  for (int j = 0; j < 512; ++j) {
    cx z = std::polar(1.0, 2.0 * kPi * (j + 0.5) / 512);
    sup = std::max(sup, std::abs(num.eval(z) / den.eval(z)));
  }
  if (sup <= 0) return rational_const(cx(target_sup));
  return {cx(target_sup / sup) * num, den};
}

RationalFn random_outside_poles(Rng& rng, int max_num_deg) {
  int nd = int(rng.uniform(0.0, 0.999) * (max_num_deg + 1));
  std::vector<cx> nc(nd + 1);
  for (auto& c : nc) c = rng.box(1.0);
  Poly num(std::move(nc));
  if (num.is_zero()) num = Poly::constant(cx(1.0));
  int poles = 1 + int(rng.uniform(0.0, 2.999));
  std::vector<std::pair<cx, int>> ps;
  for (int i = 0; i < poles; ++i) ps.push_back({rng.annulus(1.6, 3.0), 1});
  return {num, Poly::from_roots(ps)};
}

struct Battery {
  std::vector<PythagoreanPair> pairs;  // a1 = z-1, (z-1)(z+1), (z-1)^2
  std::vector<Poly> ps;                // Theorem battery polynomials
};

Battery make_battery(const SelftestConfig& cfg) {
  Battery b;
  Poly z = poly_z();

  RationalFn b1{Poly({cx(0.5), cx(0.5)}), Poly::constant(cx(1.0))};  // (1+z)/2
  b.pairs.push_back(mate(b1, cfg.grid_n, cfg.snap_tol));

  RationalFn b2{Poly({cx(0.5), cx(0.0), cx(0.5)}), Poly::constant(cx(1.0))};  // (1+z^2)/2
  b.pairs.push_back(mate(b2, cfg.grid_n, cfg.snap_tol));

  // A pair whose mate has a double boundary zero: factor 1 - |(1-z)^2/4|^2.
  Poly a3 = cx(0.25) * Poly({cx(1.0), cx(-2.0), cx(1.0)});
  Poly b3 = fejer_riesz(one_minus_abs2(a3), cfg.snap_tol);
  b.pairs.push_back(mate({b3, Poly::constant(cx(1.0))}, cfg.grid_n, cfg.snap_tol));

  b.ps.push_back(Poly({cx(-1.0), cx(1.0)}));                      // z - 1
  b.ps.push_back(Poly({cx(-1.0), cx(0.0), cx(1.0)}));             // (z-1)(z+1)
  b.ps.push_back(Poly({cx(1.0), cx(-2.0), cx(1.0)}));             // (z-1)^2
  b.ps.push_back(Poly({cx(1.0), cx(0.0), cx(1.0)}));              // z^2 + 1
  b.ps.push_back(Poly({-std::polar(1.0, 0.7), cx(0.0), cx(1.0)}));  // rotated z^2+1
  return b;
}

FactorParams factor_params(const SelftestConfig& cfg) {
  FactorParams p;
  p.grid_n = cfg.grid_n;
  p.adaptive = cfg.adaptive;
  p.tol = cfg.tol_factorization;
  p.tail_tol = cfg.tol_membership;
  p.snap_tol = cfg.snap_tol;
  return p;
}

SpaceParams space_params(const SelftestConfig& cfg) {
  SpaceParams p;
  p.grid_n = cfg.grid_n;
  p.membership_tol = cfg.tol_membership;
  p.gcd_tol = cfg.gcd_tol;
  return p;
}

std::vector<FunctionSpec> h_battery(Rng& rng) {
  std::vector<FunctionSpec> hs;
  hs.push_back(FunctionSpec::make_taylor({cx(1.0)}));
  hs.push_back(FunctionSpec::make_taylor({cx(0.0), cx(1.0)}));
  hs.push_back(FunctionSpec::make_rational(Poly::constant(cx(1.0)), Poly({cx(1.0), cx(-0.5)})));
  hs.push_back(FunctionSpec::make_rational(Poly({cx(2.0), cx(1.0)}), Poly({cx(2.0), cx(-1.0)})));
  hs.push_back(FunctionSpec::make_rational(Poly::constant(cx(1.0)),
                                           Poly({cx(1.0), cx(-1.2), cx(0.36)})));
  hs.push_back(FunctionSpec::make_rational(Poly({cx(1.0), cx(-1.0 / 3.0)}),
                                           Poly({cx(1.0), cx(0.5)})));
  for (int i = 0; i < 6; ++i) {
    RationalFn r = random_outside_poles(rng, 3);
    hs.push_back(FunctionSpec::make_rational(r.num, r.den));
  }
  return hs;
}

/// Random member of the space: f = a1 g + polyPart assembled exactly as a
/// rational function.
FunctionSpec random_member(Rng& rng, const PythagoreanPair& pair, Poly* poly_part_out) {
  RationalFn g = random_outside_poles(rng, 2);
  std::vector<cx> pc(std::max(pair.n_total, 1));
  for (auto& c : pc) c = rng.box(1.0);
  Poly poly_part = (pair.n_total > 0) ? Poly(std::move(pc)) : Poly();
  if (poly_part_out) *poly_part_out = poly_part;
  Poly num = pair.a1 * g.num + poly_part * g.den;
  return FunctionSpec::make_rational(num, g.den);
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

CriterionResult criterion_mate(const SelftestConfig& cfg) {
  Tracker t;
  Rng rng(101);
  std::vector<RationalFn> bees;
  bees.push_back({Poly({cx(0.5), cx(0.5)}), Poly::constant(cx(1.0))});
  bees.push_back({Poly({cx(0.0), cx(0.5), cx(0.5)}), Poly::constant(cx(1.0))});
  bees.push_back({Poly({cx(0.25), cx(0.5), cx(0.25)}), Poly::constant(cx(1.0))});
  bees.push_back({Poly(), Poly::constant(cx(1.0))});
  while (bees.size() < 25) bees.push_back(random_ball_rational(rng, 4, 0.3 + 0.65 * rng.uniform()));

  for (const auto& b : bees) {
    PythagoreanPair pair = mate(b, cfg.grid_n, cfg.snap_tol);
    t.upper(pair.mate_residual, cfg.tol_mate, "mate residual");
    cx a0 = pair.a.eval(cx(0.0));
    t.lower(a0.real(), 1e-12, "Re a(0)");
    t.upper(std::abs(a0.imag()), 1e-12, "Im a(0)");
    t.lower(pair.outer_margin, -cfg.snap_tol, "outer margin of a");
    t.lower(pair.corona_min, 1e-6, "corona minimum");
  }
  return t.finish(1, "mate-identity", "25 rational b within 1e-8");
}

CriterionResult criterion_fejer(const SelftestConfig& cfg) {
  Tracker t;
  Rng rng(202);
  int planted_checked = 0;
  for (int case_i = 0; case_i < 50; ++case_i) {
    bool plant = case_i >= 30;
    int base_deg = 1 + int(rng.uniform(0.0, 0.999) * (plant ? 6 : 10));
    std::vector<cx> sc(base_deg + 1);
    for (auto& c : sc) c = rng.box(1.0);
    Poly s(std::move(sc));
    if (s.is_zero()) s = Poly::constant(cx(1.0));

    std::vector<std::pair<cx, int>> planted;
    if (plant) {
      int mu = 1 + (case_i % 2);
      cx xi = rng.unit();
      planted.push_back({xi, mu});
      s = s * Poly::from_roots(planted);
    }
    cx norm(1.0 / std::max(s.coeff_l2_norm(), 1e-300));
    s = norm * s;

    FejerRieszResult fr = fejer_riesz_full(abs2_laurent(s), cfg.snap_tol);
    t.upper(fr.residual, 1e-8, "|r|^2 - t residual");

    for (const auto& [xi, mu] : planted) {
      bool found = false;
      for (const auto& e : fr.boundary_roots.entries)
        if (std::abs(e.location - xi) <= 1e-6 && e.multiplicity == mu) found = true;
      t.require(found, "planted boundary multiplicity recovered");
      ++planted_checked;
    }
  }
  std::ostringstream extra;
  extra << "50 factorizations, " << planted_checked << " planted boundary zeros";
  return t.finish(2, "fejer-riesz-oracle", extra.str());
}

CriterionResult criterion_decompose(const SelftestConfig& cfg, const Battery& battery) {
  Tracker t;
  Rng rng(303);
  SpaceParams sp = space_params(cfg);
  for (const auto& pair : battery.pairs) {
    for (int case_i = 0; case_i < 100; ++case_i) {
      int gdeg = 1 + int(rng.uniform(0.0, 0.999) * 20);
      std::vector<cx> gc(gdeg + 1);
      double decay = 1.0;
      for (auto& c : gc) {
        c = decay * rng.box(1.0);
        decay *= 0.75;
      }
      Poly g(std::move(gc));
      std::vector<cx> pc(std::max(pair.n_total, 1));
      for (auto& c : pc) c = rng.box(1.0);
      Poly poly_part = (pair.n_total > 0) ? Poly(std::move(pc)) : Poly();

      Poly f = pair.a1 * g + poly_part;
      HbDecomposition d = decompose(FunctionSpec::make_taylor(f.coeffs()), pair, sp);

      double gdiff = 0.0;
      for (int k = 0; k < static_cast<int>(d.g.taylor.size()); ++k)
        gdiff = std::max(gdiff, std::abs(d.g.taylor[k] - g.coeff(k)));
      t.upper(gdiff, 1e-7, "g recovery");
      t.upper((d.poly_part - poly_part).coeff_inf_norm(), 1e-7, "polyPart recovery");

      double expect = std::hypot(g.coeff_l2_norm(), poly_part.coeff_l2_norm());
      t.upper(std::abs(hb_norm(d) - expect), 1e-7, "norm consistency");
    }
  }
  return t.finish(3, "decomposition-round-trip", "300 (g, polyPart) pairs over three a1");
}

CriterionResult criterion_factor_h2(const SelftestConfig& cfg, const Battery& battery,
                                    double* worst_route_gap) {
  Tracker t;
  Rng rng(404);
  FactorParams fp = factor_params(cfg);
  std::vector<FunctionSpec> hs = h_battery(rng);
  int cases = 0;
  double route_gap = 0.0;
  for (const auto& p : battery.ps) {
    for (const auto& h : hs) {
      SmirnovFactorization fact = factor_h2(h, p, fp);
      ++cases;
      double scale = 1.0 + fact.certs.max_abs_h;
      t.upper(fact.certs.residual, cfg.tol_factorization * scale, "reconstruction residual");
      t.upper(fact.certs.sup_phq, 1.0 + 1e-6, "sup |p h_c/(F0+1)|");
      t.upper(fact.certs.sup_pu, 1e6, "sup |p u| scaled");
      t.upper(fact.certs.sup_pv, 1e6, "sup |p v|");
      t.lower(fact.certs.min_q, 0.5 - 1e-9, "min |Q|");
      t.require(fact.certs.denom_outer_structural, "structural outer route");
      t.require(fact.certs.denom_outer_jensen.outer, "Jensen outer route");
      t.upper(fact.certs.tail_u, cfg.tol_membership, "tail of u");
      t.upper(fact.certs.tail_v, cfg.tol_membership, "tail of v");
      t.upper(fact.certs.tail_fp, cfg.tol_membership, "tail of F/p");
      t.lower(fact.certs.re_f0_min, -1e-9, "Re F0 on probes");
      t.lower(fact.certs.abs_d_min, 1.0 - 1e-9, "|F0+1| on probes");
      route_gap = std::max(route_gap, fact.certs.route_gap);
    }
  }
  if (worst_route_gap) *worst_route_gap = route_gap;
  std::ostringstream extra;
  extra << cases << " (h, p) factorizations";
  return t.finish(4, "theorem-reconstruction", extra.str());
}

CriterionResult criterion_dual_route(const SelftestConfig& cfg, const Battery& battery,
                                     double worst_route_gap) {
  Tracker t;
  t.upper(worst_route_gap, 1e-6, "route gap across the battery");

  // Coarse-grid probe: the (z-1)^2 battery cases disagree at n = 64 and the
  // adaptive ladder must resolve it.
  const Poly& p = battery.ps[2];
  std::vector<FunctionSpec> probes;
  probes.push_back(
      FunctionSpec::make_rational(Poly({cx(2.0), cx(1.0)}), Poly({cx(2.0), cx(-1.0)})));
  probes.push_back(
      FunctionSpec::make_rational(Poly::constant(cx(1.0)), Poly({cx(1.0), cx(-0.5)})));
  probes.push_back(FunctionSpec::make_rational(Poly::constant(cx(1.0)),
                                               Poly({cx(1.0), cx(-1.2), cx(0.36)})));
  bool saw_mismatch = false;
  bool resolved = false;
  for (const auto& h : probes) {
    auto grid = BoundaryGrid::make(64);
    BoundaryFn hb = sample(h, grid);
    bool mismatch = false;
    try {
      correction_poly(hb, p, cfg.snap_tol);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::RouteMismatch) mismatch = true;
    }
    if (!mismatch) continue;
    saw_mismatch = true;
    FactorParams fp = factor_params(cfg);
    fp.grid_n = 64;
    fp.adaptive = true;
    SmirnovFactorization fact = factor_h2(h, p, fp);
    resolved = fact.grid_n > 64 && fact.certs.pass(cfg.tol_factorization);
    break;
  }
  t.require(saw_mismatch, "route mismatch observed at n = 64");
  t.require(resolved, "adaptive doubling resolves the mismatch");
  return t.finish(5, "dual-route-correction", "spectral and moment routes agree to 1e-6");
}

CriterionResult criterion_factor_hb(const SelftestConfig& cfg, const Battery& battery) {
  Tracker t;
  Rng rng(606);
  FactorParams fp = factor_params(cfg);
  int cases = 0;
  for (const auto& pair : battery.pairs) {
    for (int case_i = 0; case_i < 25; ++case_i) {
      Poly poly_part;
      FunctionSpec f = random_member(rng, pair, &poly_part);
      HbSmirnovResult res = factor_hb(f, pair, fp);
      ++cases;
      t.require(res.numerator.r.is_zero(), "r1 = 0 exactly");
      Poly r2d = res.denominator.r - Poly::constant(cx(1.0));
      t.require(r2d.is_zero(), "r2 = 1 exactly");
      t.require(res.denominator_cyclic.verdict, "denominator cyclic");
      double scale = 1.0 + res.max_abs_f;
      t.upper(res.residual, cfg.tol_factorization * scale, "assembly residual");
    }
  }
  std::ostringstream extra;
  extra << cases << " random members across three a1";
  return t.finish(6, "main-theorem-assembly", extra.str());
}

CriterionResult criterion_cyclicity_routes(const SelftestConfig& cfg, const Battery& battery) {
  Tracker t;
  Rng rng(707);
  SpaceParams sp = space_params(cfg);
  int agreements = 0, total = 0;
  for (const auto& pair : battery.pairs) {
    for (int case_i = 0; case_i < 100; ++case_i) {
      int deg = 1 + int(rng.uniform(0.0, 0.999) * 6);
      std::vector<cx> pc(deg + 1);
      for (auto& c : pc) c = rng.box(1.0);
      Poly psi(std::move(pc));
      if (psi.is_zero()) psi = Poly::constant(cx(1.0));
      CyclicityCert cert = is_cyclic(FunctionSpec::make_taylor(psi.coeffs()), pair, sp);
      ++total;
      if (cert.verdict == cert.verdict_boundary) ++agreements;
    }
  }
  t.require(agreements == total, "route agreement on every case");
  std::ostringstream extra;
  extra << agreements << "/" << total << " agreements";
  return t.finish(7, "cyclicity-route-equivalence", extra.str());
}

CriterionResult criterion_algebra(const SelftestConfig& cfg, const Battery& battery) {
  Tracker t;
  Rng rng(808);
  FactorParams fp = factor_params(cfg);
  const PythagoreanPair& pair = battery.pairs[1];  // a1 = (z-1)(z+1)

  std::vector<HbFraction> fracs;
  for (int i = 0; i < 10; ++i) {
    Poly poly_part;
    FunctionSpec f = random_member(rng, pair, &poly_part);
    HbSmirnovResult res = factor_hb(f, pair, fp);
    HbFraction frac;
    frac.num.g_tilde = res.numerator.g_tilde.plus(res.denominator.g_tilde.times_poly(poly_part));
    frac.num.r = poly_part;
    frac.den = res.denominator;
    fracs.push_back(std::move(frac));
  }

  int combos = 0;
  for (std::size_t i = 0; i < fracs.size(); ++i) {
    for (std::size_t j = i + 1; j < fracs.size(); ++j) {
      for (CombineMode mode : {CombineMode::Sum, CombineMode::Product}) {
        CombineCerts certs;
        try {
          combine(fracs[i], fracs[j], mode, pair, fp, &certs);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::CertificationFailure) throw;
        }
        t.require(certs.pass, "combined pair re-verifies");
        ++combos;
      }
    }
  }
  std::ostringstream extra;
  extra << combos << " pairwise combinations";
  return t.finish(8, "algebra-closure", extra.str());
}

CriterionResult criterion_kernel(const SelftestConfig& cfg) {
  Tracker t;
  Rng rng(909);
  (void)cfg;
  for (int case_i = 0; case_i < 20; ++case_i) {
    RationalFn b = random_ball_rational(rng, 4, 0.2 + 0.75 * rng.uniform());
    std::vector<cx> pts(5);
    for (auto& z : pts) z = rng.annulus(0.0, 0.8);
    Eigen::MatrixXcd gram(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) gram(i, j) = kernel_eval(b, pts[j], pts[i]);
    Eigen::MatrixXcd herm = 0.5 * (gram + gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
    t.lower(es.eigenvalues().minCoeff(), -1e-9, "Gram min eigenvalue");
  }
  return t.finish(9, "kernel-positivity", "20 five-point Gram matrices");
}

CriterionResult criterion_negative_controls(const SelftestConfig& cfg, const Battery& battery) {
  Tracker t;
  FactorParams fp = factor_params(cfg);
  SpaceParams sp = space_params(cfg);
  const PythagoreanPair& pair = battery.pairs[0];  // a1 = z - 1

  bool inner_rejected = false;
  try {
    mate({Poly({cx(0.0), cx(1.0)}), Poly::constant(cx(1.0))}, cfg.grid_n, cfg.snap_tol);
  } catch (const Error& e) {
    inner_rejected = e.kind() == ErrorKind::InnerInput;
  }
  t.require(inner_rejected, "b = z rejected with InnerInput");

  bool blaschke_rejected = false;
  try {
    mate({Poly({cx(-0.5), cx(1.0)}), Poly({cx(1.0), cx(-0.5)})}, cfg.grid_n, cfg.snap_tol);
  } catch (const Error& e) {
    blaschke_rejected = e.kind() == ErrorKind::InnerInput;
  }
  t.require(blaschke_rejected, "Blaschke factor rejected with InnerInput");

  CyclicityCert a1_cert = is_cyclic(FunctionSpec::make_taylor(pair.a1.coeffs()), pair, sp);
  t.require(!a1_cert.verdict, "psi = a1 declared non-cyclic");

  CyclicityCert z_cert = is_cyclic(FunctionSpec::make_taylor({cx(0.0), cx(1.0)}), pair, sp);
  t.require(!z_cert.verdict, "psi = z declared non-cyclic");

  FunctionSpec one = FunctionSpec::make_taylor({cx(1.0)});
  SmirnovFactorization fact = factor_h2(one, battery.ps[0], fp);
  VerifyReport clean = verify(fact, one, cfg.tol_factorization, fp);
  t.require(clean.pass, "untampered factorization verifies");
  SmirnovFactorization tampered = fact;
  if (tampered.u.taylor.empty()) tampered.u.taylor.push_back(cx(0.0));
  tampered.u.taylor[0] += 1e-3;
  VerifyReport rep = verify(tampered, one, cfg.tol_factorization, fp);
  t.require(!rep.pass, "tampered factorization fails verify");
  return t.finish(10, "negative-controls", "inner inputs, non-cyclic psi, tamper detection");
}

}  // namespace

SelftestReport run_selftest(const SelftestConfig& config) {
  SelftestReport report;
  Battery battery = make_battery(config);

  report.criteria.push_back(criterion_mate(config));
  report.criteria.push_back(criterion_fejer(config));
  report.criteria.push_back(criterion_decompose(config, battery));
  double worst_route_gap = 0.0;
  report.criteria.push_back(criterion_factor_h2(config, battery, &worst_route_gap));
  report.criteria.push_back(criterion_dual_route(config, battery, worst_route_gap));
  report.criteria.push_back(criterion_factor_hb(config, battery));
  report.criteria.push_back(criterion_cyclicity_routes(config, battery));
  report.criteria.push_back(criterion_algebra(config, battery));
  report.criteria.push_back(criterion_kernel(config));
  report.criteria.push_back(criterion_negative_controls(config, battery));

  report.all_pass = true;
  for (const auto& c : report.criteria) report.all_pass = report.all_pass && c.pass;
  return report;
}

}  // namespace hbs
