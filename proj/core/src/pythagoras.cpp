#include "hbs/pythagoras.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hbs {

namespace {

constexpr double kPi = std::numbers::pi;

cx eval_laurent(const std::vector<cx>& c, int d, cx z) {
  // c holds c_{-d}..c_d; evaluate sum c_k z^k on |z| = 1 (z^{-1} = conj(z)).
  cx acc = c[d];
  cx zk(1.0);
  for (int k = 1; k <= d; ++k) {
    zk *= z;
    acc += c[d + k] * zk + c[d - k] * std::conj(zk);
  }
  return acc;
}

}  // namespace

bool is_inner_rational(const RationalFn& b, int grid_n) {
  auto grid = BoundaryGrid::make(grid_n);
  BoundaryFn bs = sample(FunctionSpec::make_rational(b.num, b.den), grid);
  double sup = bs.max_abs();
  if (sup > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "sup |b| = " << sup << " on the grid";
    fail(ErrorKind::NotInBall, os.str());
  }
  for (const auto& s : bs.samples())
    if (std::abs(std::abs(s) - 1.0) > 1e-8) return false;
  return true;
}

FejerRieszResult fejer_riesz_full(const std::vector<cx>& laurent, double snap_tol) {
  if (laurent.empty() || laurent.size() % 2 == 0)
    fail(ErrorKind::InvalidInput, "laurent coefficients must have odd length c_{-d}..c_d");
  int d = static_cast<int>(laurent.size()) / 2;
  double scale = 0.0;
  for (const auto& c : laurent) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) fail(ErrorKind::NotNonnegative, "zero trigonometric polynomial");
  for (int k = 0; k <= d; ++k)
    if (std::abs(laurent[d + k] - std::conj(laurent[d - k])) > 1e-10 * scale)
      fail(ErrorKind::InvalidInput, "coefficients are not conjugate-symmetric");

  // Trim numerically absent top coefficients so the lift has no spurious
  // near-zero leading terms.
  int d_eff = d;
  while (d_eff > 0 && std::abs(laurent[d + d_eff]) <= 1e-13 * scale) --d_eff;
  std::vector<cx> c(laurent.begin() + (d - d_eff), laurent.begin() + (d + d_eff + 1));
  d = d_eff;

  // Nonnegativity probe.
  int probe = std::max(256, 16 * (d + 1));
  double min_t = 1e300;
  for (int j = 0; j < probe; ++j) {
    double th = 2.0 * kPi * (j + 0.5) / probe;
    min_t = std::min(min_t, eval_laurent(c, d, cx(std::cos(th), std::sin(th))).real());
  }
  if (min_t < -1e-12 * std::max(1.0, scale)) {
    std::ostringstream os;
    os << "trig polynomial dips to " << min_t;
    fail(ErrorKind::NotNonnegative, os.str());
  }

  FejerRieszResult out;
  if (d == 0) {
    double c0 = c[0].real();
    if (c0 < 0) fail(ErrorKind::NotNonnegative, "negative constant");
    out.r = Poly::constant(cx(std::sqrt(c0)));
    out.residual = 0.0;
    return out;
  }

  // Roots of the Laurent lift L(z) = z^d t(z).
  Poly lift{std::vector<cx>(c.begin(), c.end())};
  RootSet rs = roots(lift, snap_tol);

  std::vector<std::pair<cx, int>> selected;  // roots of r
  for (const auto& e : rs.entries) {
    double mod = std::abs(e.location);
    if (std::abs(mod - 1.0) <= std::max(snap_tol, 2e-5)) {
      if (e.multiplicity % 2 != 0) {
        std::ostringstream os;
        os << "boundary root near " << e.location.real() << "+" << e.location.imag()
           << "i has odd multiplicity " << e.multiplicity;
        fail(ErrorKind::NotNonnegative, os.str());
      }
      cx snapped = e.location / mod;
      selected.push_back({snapped, e.multiplicity / 2});
      out.boundary_roots.entries.push_back({snapped, e.multiplicity / 2});
    } else if (mod > 1.0) {
      selected.push_back({e.location, e.multiplicity});
    }
  }

  Poly r0 = Poly::from_roots(selected);
  if (r0.degree() != d)
    fail(ErrorKind::NonConvergence,
         "root pairing mismatch in spectral factorization: got degree " +
             std::to_string(r0.degree()) + " expected " + std::to_string(d));

  // Least-squares modulus fit of the unimodular-free constant.
  int g = std::max(512, 16 * (d + 1));
  double num = 0.0, den = 0.0;
  for (int j = 0; j < g; ++j) {
    double th = 2.0 * kPi * (j + 0.5) / g;
    cx z(std::cos(th), std::sin(th));
    double t = eval_laurent(c, d, z).real();
    double m2 = std::norm(r0.eval(z));
    num += t * m2;
    den += m2 * m2;
  }
  if (den <= 0) fail(ErrorKind::NonConvergence, "degenerate modulus fit");
  double gamma2 = std::max(num / den, 0.0);
  Poly r = cx(std::sqrt(gamma2)) * r0;

  // Phase normalization.
  cx r0v = r.eval(cx(0.0));
  cx phase(1.0);
  if (std::abs(r0v) > 1e-12 * r.coeff_inf_norm()) {
    phase = std::conj(r0v) / std::abs(r0v);
  } else if (std::abs(r.leading()) > 0) {
    phase = std::conj(r.leading()) / std::abs(r.leading());
  }
  r = phase * r;

  double resid = 0.0;
  for (int j = 0; j < g; ++j) {
    double th = 2.0 * kPi * (j + 0.5) / g;
    cx z(std::cos(th), std::sin(th));
    resid = std::max(resid, std::abs(std::norm(r.eval(z)) - eval_laurent(c, d, z).real()));
  }
  out.r = r;
  out.residual = resid;
  return out;
}

Poly fejer_riesz(const std::vector<cx>& laurent, double snap_tol) {
  return fejer_riesz_full(laurent, snap_tol).r;
}

std::pair<Poly, int> extract_unimodular(const RationalFn& a, double snap_tol,
                                        RootSet* boundary_out) {
  if (a.num.is_zero()) fail(ErrorKind::InvalidInput, "zero function has no zero structure");
  RootSet bz;
  std::vector<std::pair<cx, int>> circle;
  if (a.num.degree() >= 1) {
    RootSet rs = roots(a.num, snap_tol);
    for (const auto& e : rs.entries) {
      double mod = std::abs(e.location);
      if (std::abs(mod - 1.0) <= std::max(snap_tol, 2e-5)) {
        cx snapped = e.location / mod;
        circle.push_back({snapped, e.multiplicity});
        bz.entries.push_back({snapped, e.multiplicity});
        bz.residual = std::max(bz.residual, std::abs(a.num.eval(snapped)));
      }
    }
  }
  Poly a1 = Poly::from_roots(circle);
  int n_total = 0;
  for (const auto& e : bz.entries) n_total += e.multiplicity;
  if (boundary_out) *boundary_out = bz;
  return {a1, n_total};
}

std::pair<Poly, int> extract_unimodular(const RationalFn& a, double snap_tol) {
  return extract_unimodular(a, snap_tol, nullptr);
}

PythagoreanPair mate(const RationalFn& b_in, int grid_n, double snap_tol) {
  RationalFn b = b_in.reduced();
  auto grid = BoundaryGrid::make(grid_n);

  // Poles must stay off the closed disk.
  if (b.den.degree() >= 1) {
    RootSet dr = roots(b.den);
    for (const auto& e : dr.entries)
      if (std::abs(e.location) <= 1.0 + 1e-8)
        fail(ErrorKind::PoleNearBoundary, "denominator root inside or on the closed disk");
  }

  BoundaryFn bs = sample(FunctionSpec::make_rational(b.num, b.den), grid);
  double sup = bs.max_abs();
  if (sup > 1.0 + 1e-9)
    fail(ErrorKind::NotInBall, "sup |b| = " + std::to_string(sup) + " exceeds 1");
  bool inner = true;
  for (const auto& s : bs.samples())
    if (std::abs(std::abs(s) - 1.0) > 1e-8) {
      inner = false;
      break;
    }
  if (inner)
    fail(ErrorKind::InnerInput,
         "b is inner; the associated space is a model space, outside this construction");

  // Laurent coefficients of |q_b|^2 - |p_b|^2 by coefficient autocorrelation.
  const Poly& pb = b.num;
  const Poly& qb = b.den;
  int d = std::max(pb.degree(), qb.degree());
  if (d < 0) d = 0;
  std::vector<cx> t(2 * d + 1, cx(0.0));
  for (int k = -d; k <= d; ++k) {
    cx acc(0.0);
    for (int j = 0; j <= qb.degree(); ++j) acc += std::conj(qb.coeff(j)) * qb.coeff(j + k);
    for (int j = 0; j <= pb.degree(); ++j) acc -= std::conj(pb.coeff(j)) * pb.coeff(j + k);
    t[d + k] = acc;
  }

  FejerRieszResult fr = fejer_riesz_full(t, snap_tol);
  Poly r = fr.r;

  PythagoreanPair pair;
  pair.b = b;

  // Unimodular rescale so that a(0) is real and positive.
  cx a0 = r.eval(cx(0.0)) / qb.eval(cx(0.0));
  if (std::abs(a0) < 1e-12)
    fail(ErrorKind::NonConvergence,
         "a(0) vanished; rational non-inner b should give a(0) != 0");
  r = (std::conj(a0) / std::abs(a0)) * r;
  pair.a = {r, qb};

  pair.boundary_zeros = fr.boundary_roots;
  std::vector<std::pair<cx, int>> circle;
  for (const auto& e : fr.boundary_roots.entries) circle.push_back({e.location, e.multiplicity});
  pair.a1 = Poly::from_roots(circle);
  pair.n_total = 0;
  for (const auto& e : fr.boundary_roots.entries) pair.n_total += e.multiplicity;

  // Certificates.
  double resid = 0.0;
  for (int j = 0; j < grid->size(); ++j) {
    cx z = grid->nodes()[j];
    double v = std::norm(pair.a.eval(z)) + std::norm(bs.samples()[j]) - 1.0;
    resid = std::max(resid, std::abs(v));
  }
  pair.mate_residual = resid;

  double out_margin = 1.0;
  if (r.degree() >= 1) {
    RootSet nr = roots(r, snap_tol);
    double min_mod = 1e300;
    for (const auto& e : nr.entries) min_mod = std::min(min_mod, std::abs(e.location));
    out_margin = min_mod - 1.0;
  }
  pair.outer_margin = out_margin;
  pair.corona_min = corona_check(pair);
  return pair;
}

double corona_check(const PythagoreanPair& pair, int probe_count) {
  static const double radii[] = {0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0};
  double min_v = 1e300;
  for (double rad : radii) {
    int count = (rad == 0.0) ? 1 : probe_count;
    for (int j = 0; j < count; ++j) {
      double th = 2.0 * kPi * (j + 0.5) / count;
      cx z = rad * cx(std::cos(th), std::sin(th));
      double v = std::abs(pair.a.eval(z)) + std::abs(pair.b.eval(z));
      min_v = std::min(min_v, v);
    }
  }
  return min_v;
}

}  // namespace hbs
