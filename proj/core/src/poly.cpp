#include "hbs/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

namespace hbs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string cx_str(cx z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cx(0.0)) coeffs_.pop_back();
}

Poly Poly::from_roots(const std::vector<std::pair<cx, int>>& roots) {
  std::vector<cx> c{cx(1.0)};
  for (const auto& [loc, mult] : roots) {
    for (int i = 0; i < mult; ++i) {
      std::vector<cx> next(c.size() + 1, cx(0.0));
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += c[k];
        next[k] -= loc * c[k];
      }
      c = std::move(next);
    }
  }
  return Poly(std::move(c));
}

cx Poly::eval(cx z) const {
  cx y(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) y = y * z + *it;
  return y;
}

cx Poly::eval_derivative(cx z, int order) const {
  if (order <= 0) return eval(z);
  Poly d = *this;
  for (int i = 0; i < order; ++i) d = d.derivative();
  return d.eval(z);
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<cx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = double(k) * coeffs_[k];
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return Poly();
  std::vector<cx> c = coeffs_;
  cx lead = c.back();
  for (auto& v : c) v /= lead;
  c.back() = cx(1.0);
  return Poly(std::move(c));
}

Poly Poly::truncated(int max_degree) const {
  if (max_degree < 0) return Poly();
  std::vector<cx> c(coeffs_.begin(),
                    coeffs_.begin() + std::min<std::size_t>(coeffs_.size(), max_degree + 1));
  return Poly(std::move(c));
}

Poly Poly::shifted(cx a) const {
  // In-place Horner shift: after pass j, c[j] is the s^j coefficient of p(a+s).
  std::vector<cx> c = coeffs_;
  const int n = static_cast<int>(c.size());
  std::vector<cx> out(n, cx(0.0));
  for (int j = 0; j < n; ++j) {
    for (int k = n - 2; k >= j; --k) c[k] += a * c[k + 1];
    out[j] = c[j];
  }
  return Poly(std::move(out));
}

Poly Poly::deflated(cx r) const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<cx> q(coeffs_.size() - 1);
  cx carry = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
    q[k] = carry;
    carry = coeffs_[k] + carry * r;
  }
  return Poly(std::move(q));
}

Poly Poly::pruned(double tol) const {
  double scale = coeff_inf_norm();
  std::vector<cx> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= tol * scale) c.pop_back();
  return Poly(std::move(c));
}

double Poly::coeff_inf_norm() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Poly::coeff_l2_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

Poly Poly::operator-() const {
  std::vector<cx> c = coeffs_;
  for (auto& v : c) v = -v;
  return Poly(std::move(c));
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), cx(0.0));
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), cx(0.0));
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return Poly();
  std::vector<cx> c(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, cx(0.0));
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
      c[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  return Poly(std::move(c));
}

Poly operator*(cx s, const Poly& p) {
  std::vector<cx> c = p.coeffs();
  for (auto& v : c) v *= s;
  return Poly(std::move(c));
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

namespace {

// Backward-error floor for an evaluated residual at z.
double backward_bound(const Poly& p, cx z) {
  double b = 0.0;
  double az = std::abs(z);
  double pw = 1.0;
  for (const auto& c : p.coeffs()) {
    b += std::abs(c) * pw;
    pw *= az;
  }
  return b;
}

std::vector<cx> aberth(const Poly& p) {
  const int d = p.degree();
  std::vector<cx> z(d);
  double ratio = 0.0;
  for (int i = 0; i < d; ++i) ratio = std::max(ratio, std::abs(p.coeff(i) / p.leading()));
  const double r0 = 1.0 + ratio;
  for (int k = 0; k < d; ++k) {
    double th = 2.0 * kPi * (k + 0.35) / d;
    z[k] = r0 * cx(std::cos(th), std::sin(th));
  }
  const Poly dp = p.derivative();

  const int cap = 500;
  for (int iter = 0; iter < cap; ++iter) {
    double max_update = 0.0;
    bool all_floored = true;
    for (int k = 0; k < d; ++k) {
      cx pk = p.eval(z[k]);
      double floor_k = 8.0 * kEps * backward_bound(p, z[k]);
      if (std::abs(pk) <= floor_k) continue;
      all_floored = false;
      cx dk = dp.eval(z[k]);
      if (std::abs(dk) < 1e-300) {
        z[k] += cx(1e-6, 1e-6);
        max_update = std::max(max_update, 1e-6);
        continue;
      }
      cx newton = pk / dk;
      cx sum(0.0);
      for (int j = 0; j < d; ++j)
        if (j != k) sum += cx(1.0) / (z[k] - z[j]);
      cx denom = cx(1.0) - newton * sum;
      cx step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
      z[k] -= step;
      max_update = std::max(max_update, std::abs(step));
    }
    if (all_floored || max_update < 1e-13) return z;
  }
  double res = 0.0;
  for (const auto& zk : z) res = std::max(res, std::abs(p.eval(zk)));
  std::ostringstream os;
  os << "root iteration cap reached, best residual " << res;
  throw Error(ErrorKind::NonConvergence, os.str());
}

// Newton polish of a multiplicity-m root: m is 1-based; for m > 1 the root is
// a simple root of the (m-1)-th derivative.
cx refine_root(const Poly& p, cx x0, int m) {
  Poly target = p;
  for (int i = 1; i < m; ++i) target = target.derivative();
  Poly dt = target.derivative();
  cx x = x0;
  for (int it = 0; it < 60; ++it) {
    cx f = target.eval(x);
    cx df = dt.eval(x);
    if (std::abs(df) < 1e-300) break;
    cx step = f / df;
    x -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  // Reject a refinement that wandered away from the cluster.
  if (std::abs(x - x0) > 0.1 * std::max(1.0, std::abs(x0))) return x0;
  return x;
}

// Does x look like a root of multiplicity m?  All derivatives below order m
// must sit at their backward-error scale.
bool validate_multiplicity(const Poly& p, cx x, int m) {
  Poly d = p;
  for (int j = 0; j < m; ++j) {
    double bound = 1e-8 * std::max(backward_bound(d, x), 1e-30);
    if (std::abs(d.eval(x)) > bound) return false;
    d = d.derivative();
  }
  return true;
}

struct Cluster {
  std::vector<cx> members;
  cx refined;
};

cx centroid(const std::vector<cx>& v) {
  cx s(0.0);
  for (const auto& x : v) s += x;
  return s / double(v.size());
}

}  // namespace

RootSet roots(const Poly& p, double cluster_tol) {
  if (p.degree() < 1) fail(ErrorKind::InvalidInput, "roots requires degree >= 1");

  // Exact zero roots first: they cost nothing and keep Aberth well scaled.
  Poly work = p;
  int zero_mult = 0;
  while (!work.is_zero() && work.coeff(0) == cx(0.0) && work.degree() >= 1) {
    work = work.deflated(cx(0.0));
    ++zero_mult;
  }

  std::vector<cx> pts;
  if (work.degree() == 1) {
    pts = {-work.coeff(0) / work.coeff(1)};
  } else if (work.degree() == 2) {
    cx a = work.coeff(2), b = work.coeff(1), c = work.coeff(0);
    cx disc = std::sqrt(b * b - 4.0 * a * c);
    cx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
    if (std::abs(q) < 1e-300) {
      pts = {cx(0.0), -b / a};
    } else {
      pts = {q / a, c / q};
    }
  } else if (work.degree() >= 3) {
    pts = aberth(work);
  }

  const double tol = std::max(cluster_tol, 1e-14);

  // Single-linkage clustering at the user tolerance.
  std::vector<Cluster> clusters;
  std::vector<bool> used(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    Cluster c;
    c.members.push_back(pts[i]);
    used[i] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (used[j]) continue;
        for (const auto& m : c.members) {
          if (std::abs(pts[j] - m) <= tol) {
            c.members.push_back(pts[j]);
            used[j] = true;
            grew = true;
            break;
          }
        }
      }
    }
    clusters.push_back(std::move(c));
  }
  for (auto& c : clusters)
    c.refined = refine_root(work, centroid(c.members), static_cast<int>(c.members.size()));

  // Wider validated merges recover multiplicities whose Aberth clusters spread
  // past the base tolerance (spread grows like eps^(1/m), with conditioning on
  // top).  A merge at this radius is accepted only when the multiple-root
  // hypothesis validates against the derivative residuals, which rejects
  // genuinely distinct roots down to separations of about 2e-4.
  const double wide = std::max(tol, 1e-2);
  bool merged_any = true;
  while (merged_any) {
    merged_any = false;
    std::vector<std::tuple<double, int, int>> cand;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        double dist = std::abs(clusters[i].refined - clusters[j].refined);
        if (dist < wide) cand.emplace_back(dist, int(i), int(j));
      }
    std::sort(cand.begin(), cand.end(),
              [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    for (const auto& [dist, i, j] : cand) {
      Cluster merged;
      merged.members = clusters[i].members;
      merged.members.insert(merged.members.end(), clusters[j].members.begin(),
                            clusters[j].members.end());
      merged.refined = refine_root(work, centroid(merged.members), int(merged.members.size()));
      bool ok = validate_multiplicity(work, merged.refined, int(merged.members.size()));
      if (!ok && dist > tol) continue;  // inside the user tolerance merges are forced
      clusters[i] = std::move(merged);
      clusters.erase(clusters.begin() + j);
      merged_any = true;
      break;
    }
  }

  RootSet rs;
  if (zero_mult > 0) rs.entries.push_back({cx(0.0), zero_mult});
  for (const auto& c : clusters)
    rs.entries.push_back({c.refined, static_cast<int>(c.members.size())});
  std::sort(rs.entries.begin(), rs.entries.end(), [](const RootEntry& a, const RootEntry& b) {
    double aa = std::arg(a.location), ab = std::arg(b.location);
    if (aa < 0) aa += 2 * kPi;
    if (ab < 0) ab += 2 * kPi;
    if (std::abs(aa - ab) > 1e-15) return aa < ab;
    return std::abs(a.location) < std::abs(b.location);
  });
  for (const auto& e : rs.entries) rs.residual = std::max(rs.residual, std::abs(p.eval(e.location)));
  return rs;
}

// ---------------------------------------------------------------------------
// gcd / Bezout
// ---------------------------------------------------------------------------

Poly gcd_approx(const Poly& p, const Poly& q, double tol) {
  if (p.is_zero() && q.is_zero()) fail(ErrorKind::InvalidInput, "gcd of two zero polynomials");
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  if (p.degree() == 0 || q.degree() == 0) return Poly::constant(cx(1.0));

  RootSet rp = roots(p, tol);
  RootSet rq = roots(q, tol);
  std::vector<int> taken(rq.entries.size(), 0);
  std::vector<std::pair<cx, int>> common;
  for (const auto& ep : rp.entries) {
    int best = -1;
    double bestd = tol;
    for (std::size_t j = 0; j < rq.entries.size(); ++j) {
      if (taken[j]) continue;
      double dist = std::abs(ep.location - rq.entries[j].location);
      if (dist <= bestd) {
        bestd = dist;
        best = int(j);
      }
    }
    if (best >= 0) {
      taken[best] = 1;
      cx mid = 0.5 * (ep.location + rq.entries[best].location);
      common.push_back({mid, std::min(ep.multiplicity, rq.entries[best].multiplicity)});
    }
  }
  if (common.empty()) return Poly::constant(cx(1.0));
  return Poly::from_roots(common);
}

BezoutResult bezout(const Poly& a1, const Poly& r, double tol) {
  if (a1.is_zero() || r.is_zero()) fail(ErrorKind::NotCoprime, "zero argument");
  Poly g = gcd_approx(a1, r, tol);
  if (g.degree() > 0)
    fail(ErrorKind::NotCoprime, "arguments share a root near " + cx_str(roots(g).entries[0].location));

  const int n = a1.degree();
  const int m = r.degree();
  BezoutResult out;
  if (m == 0) {
    out.q = Poly::constant(cx(1.0) / r.coeff(0));
    out.s = Poly();
  } else if (n == 0) {
    out.q = Poly();
    out.s = Poly::constant(cx(-1.0) / a1.coeff(0));
  } else {
    // Unknowns: q_0..q_{n-1}, s_0..s_{m-1}; equations match coefficients of
    // q*r - a1*s = 1 in degrees 0..n+m-1.
    const int dim = n + m;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
    rhs(0) = cx(1.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= m; ++j)
        if (i + j < dim) A(i + j, i) += r.coeff(j);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= n; ++j)
        if (i + j < dim) A(i + j, n + i) -= a1.coeff(j);
    Eigen::VectorXcd x = A.fullPivLu().solve(rhs);
    std::vector<cx> qc(n), sc(m);
    for (int i = 0; i < n; ++i) qc[i] = x(i);
    for (int i = 0; i < m; ++i) sc[i] = x(n + i);
    out.q = Poly(std::move(qc));
    out.s = Poly(std::move(sc));
  }
  Poly resid = out.q * r - a1 * out.s - Poly::constant(cx(1.0));
  out.residual = resid.coeff_inf_norm();
  return out;
}

// ---------------------------------------------------------------------------
// Hermite interpolation
// ---------------------------------------------------------------------------

Poly hermite_interpolant(const std::vector<HermiteNode>& nodes) {
  int n_total = 0;
  for (const auto& nd : nodes) n_total += static_cast<int>(nd.jet.size());
  if (n_total == 0) return Poly();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (std::abs(nodes[i].node - nodes[j].node) < 1e-8)
        fail(ErrorKind::SingularSystem, "nodes coincide beyond merge tolerance");

  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n_total, n_total);
  Eigen::VectorXcd b(n_total);
  int row = 0;
  for (const auto& nd : nodes) {
    for (int order = 0; order < static_cast<int>(nd.jet.size()); ++order) {
      for (int k = order; k < n_total; ++k) {
        double fall = 1.0;
        for (int t = 0; t < order; ++t) fall *= double(k - t);
        A(row, k) = fall * std::pow(nd.node, double(k - order));
      }
      b(row) = nd.jet[order];
      ++row;
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
  if (!lu.isInvertible()) fail(ErrorKind::SingularSystem, "confluent Vandermonde is singular");
  Eigen::VectorXcd x = lu.solve(b);
  std::vector<cx> c(n_total);
  for (int k = 0; k < n_total; ++k) c[k] = x(k);
  return Poly(std::move(c));
}

// ---------------------------------------------------------------------------
// Circle sup norm
// ---------------------------------------------------------------------------

double sup_norm_on_circle(const Poly& p, int grid_size) {
  if (p.is_zero()) return 0.0;
  int g = std::max({grid_size, 4 * (p.degree() + 1), 64});
  auto value = [&p](double th) { return std::abs(p.eval(cx(std::cos(th), std::sin(th)))); };
  double best = 0.0;
  double best_th = 0.0;
  for (int j = 0; j < g; ++j) {
    double th = 2.0 * kPi * j / g;
    double v = value(th);
    if (v > best) {
      best = v;
      best_th = th;
    }
  }
  // Golden-section refinement around the argmax.
  double lo = best_th - 2.0 * kPi / g;
  double hi = best_th + 2.0 * kPi / g;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 120; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = value(x1);
    }
  }
  return std::max({best, f1, f2});
}

// ---------------------------------------------------------------------------
// Rational functions and series helpers
// ---------------------------------------------------------------------------

std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) fail(ErrorKind::InvalidInput, "division by the zero polynomial");
  if (num.degree() < den.degree()) return {Poly(), num};
  std::vector<cx> rem = num.coeffs();
  std::vector<cx> quot(num.degree() - den.degree() + 1, cx(0.0));
  for (int k = num.degree(); k >= den.degree(); --k) {
    cx f = rem[k] / den.leading();
    quot[k - den.degree()] = f;
    for (int j = 0; j <= den.degree(); ++j) rem[k - den.degree() + j] -= f * den.coeff(j);
  }
  rem.resize(den.degree() > 0 ? den.degree() : 0);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

std::vector<cx> series_mul(const std::vector<cx>& a, const std::vector<cx>& b, int len) {
  std::vector<cx> out(len, cx(0.0));
  for (int i = 0; i < std::min<int>(len, int(a.size())); ++i)
    for (int j = 0; j < std::min<int>(len - i, int(b.size())); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<cx> series_inverse(const std::vector<cx>& a, int len) {
  if (a.empty() || std::abs(a[0]) < 1e-300)
    fail(ErrorKind::SingularSystem, "series inverse requires nonzero constant term");
  std::vector<cx> inv(len, cx(0.0));
  inv[0] = cx(1.0) / a[0];
  for (int k = 1; k < len; ++k) {
    cx acc(0.0);
    for (int j = 1; j <= k; ++j)
      if (j < int(a.size())) acc += a[j] * inv[k - j];
    inv[k] = -acc / a[0];
  }
  return inv;
}

std::vector<cx> RationalFn::taylor_at(cx center, int count) const {
  cx dc = den.eval(center);
  if (std::abs(dc) < 1e-12)
    fail(ErrorKind::PoleNearBoundary, "denominator vanishes at expansion point " + cx_str(center));
  Poly ns = num.shifted(center);
  Poly ds = den.shifted(center);
  std::vector<cx> nser(count, cx(0.0)), dser(count, cx(0.0));
  for (int k = 0; k < count; ++k) {
    nser[k] = ns.coeff(k);
    dser[k] = ds.coeff(k);
  }
  return series_mul(nser, series_inverse(dser, count), count);
}

RationalFn RationalFn::reduced(double tol) const {
  if (num.is_zero() || num.degree() == 0 || den.degree() == 0) return *this;
  Poly g = gcd_approx(num, den, tol);
  if (g.degree() == 0) return *this;
  RootSet gr = roots(g, tol);
  Poly n = num, d = den;
  for (const auto& e : gr.entries)
    for (int i = 0; i < e.multiplicity; ++i) {
      n = n.deflated(e.location);
      d = d.deflated(e.location);
    }
  return {n, d};
}

}  // namespace hbs
