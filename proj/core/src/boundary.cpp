#include "hbs/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hbs {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

// ---------------------------------------------------------------------------
// BoundaryGrid
// ---------------------------------------------------------------------------

BoundaryGrid::BoundaryGrid(int n) : n_(n) {
  nodes_.resize(n);
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * kPi * (j + 0.5) / n;
    nodes_[j] = cx(std::cos(th), std::sin(th));
  }
  twiddle_.resize(n / 2);
  for (int k = 0; k < n / 2; ++k) {
    double th = -2.0 * kPi * k / n;
    twiddle_[k] = cx(std::cos(th), std::sin(th));
  }
  rev_.resize(n);
  int lg = 0;
  while ((1 << lg) < n) ++lg;
  for (int i = 0; i < n; ++i) {
    unsigned r = 0;
    for (int b = 0; b < lg; ++b)
      if (i & (1 << b)) r |= 1u << (lg - 1 - b);
    rev_[i] = r;
  }
}

std::shared_ptr<const BoundaryGrid> BoundaryGrid::make(int n) {
  if (!is_pow2(n) || n < 64 || n > (1 << 20))
    fail(ErrorKind::InvalidInput, "grid size must be a power of two in [64, 2^20], got " +
                                      std::to_string(n));
  return std::shared_ptr<const BoundaryGrid>(new BoundaryGrid(n));
}

void BoundaryGrid::fft(std::vector<cx>& a) const {
  const int n = n_;
  for (int i = 0; i < n; ++i) {
    unsigned r = rev_[i];
    if (static_cast<unsigned>(i) < r) std::swap(a[i], a[r]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    int stride = n / len;
    for (int i = 0; i < n; i += len) {
      for (int j = 0; j < len / 2; ++j) {
        cx w = twiddle_[j * stride];
        cx u = a[i + j];
        cx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

void BoundaryGrid::ifft(std::vector<cx>& a) const {
  for (auto& v : a) v = std::conj(v);
  fft(a);
  for (auto& v : a) v = std::conj(v);
}

// ---------------------------------------------------------------------------
// BoundaryFn
// ---------------------------------------------------------------------------

BoundaryFn::BoundaryFn(GridPtr grid, std::vector<cx> samples)
    : grid_(std::move(grid)), samples_(std::move(samples)) {
  const int n = grid_->size();
  if (static_cast<int>(samples_.size()) != n)
    fail(ErrorKind::GridMismatch, "sample count does not match grid size");
  spectrum_ = samples_;
  grid_->fft(spectrum_);
  // Normalize and apply the half-bin phase so spectrum_[bin] equals the
  // discrete Fourier coefficient at frequency k (bin <= n/2 ? bin : bin - n).
  for (int bin = 0; bin < n; ++bin) {
    int k = (bin <= n / 2) ? bin : bin - n;
    double ph = -kPi * k / n;
    spectrum_[bin] *= cx(std::cos(ph), std::sin(ph)) / double(n);
  }
  double max_im = 0.0, max_ab = 0.0;
  for (const auto& s : samples_) {
    max_im = std::max(max_im, std::abs(s.imag()));
    max_ab = std::max(max_ab, std::abs(s));
  }
  real_valued_ = max_im <= 1e-12 * std::max(1.0, max_ab);
}

cx BoundaryFn::c(int k) const {
  const int n = grid_->size();
  if (k > n / 2 || k <= -n / 2) return cx(0.0);
  int bin = (k >= 0) ? k : k + n;
  return spectrum_[bin];
}

double BoundaryFn::max_abs() const {
  double m = 0.0;
  for (const auto& s : samples_) m = std::max(m, std::abs(s));
  return m;
}

double BoundaryFn::norm() const {
  double s = 0.0;
  for (const auto& v : samples_) s += std::norm(v);
  return std::sqrt(s / samples_.size());
}

// ---------------------------------------------------------------------------
// AnalyticFn
// ---------------------------------------------------------------------------

AnalyticFn AnalyticFn::scaled(cx s) const {
  AnalyticFn out = *this;
  for (auto& t : out.taylor) t *= s;
  out.tail_mass *= std::abs(s);
  return out;
}

AnalyticFn AnalyticFn::plus(const AnalyticFn& other) const {
  AnalyticFn out;
  out.grid_n = std::max(grid_n, other.grid_n);
  out.taylor.resize(std::max(taylor.size(), other.taylor.size()), cx(0.0));
  for (std::size_t k = 0; k < taylor.size(); ++k) out.taylor[k] += taylor[k];
  for (std::size_t k = 0; k < other.taylor.size(); ++k) out.taylor[k] += other.taylor[k];
  out.tail_mass = std::hypot(tail_mass, other.tail_mass);
  return out;
}

AnalyticFn AnalyticFn::minus(const AnalyticFn& other) const {
  return plus(other.scaled(cx(-1.0)));
}

AnalyticFn AnalyticFn::times_poly(const Poly& p) const {
  AnalyticFn out;
  out.grid_n = grid_n;
  if (p.is_zero() || taylor.empty()) {
    out.tail_mass = 0.0;
    return out;
  }
  const int len = static_cast<int>(taylor.size());
  std::vector<cx> full(len + p.degree(), cx(0.0));
  for (int i = 0; i < len; ++i)
    for (int j = 0; j <= p.degree(); ++j) full[i + j] += taylor[i] * p.coeff(j);
  out.taylor.assign(full.begin(), full.begin() + len);
  double spill = 0.0;
  for (int k = len; k < static_cast<int>(full.size()); ++k) spill += std::norm(full[k]);
  out.tail_mass = std::hypot(tail_mass * sup_norm_on_circle(p), std::sqrt(spill));
  return out;
}

std::vector<cx> AnalyticFn::trace(const BoundaryGrid& grid) const {
  const int n = grid.size();
  const int len = static_cast<int>(taylor.size());
  if (len > n) {
    // Longer series than the grid can carry in one transform: direct Horner.
    std::vector<cx> out(n);
    for (int j = 0; j < n; ++j) {
      cx z = grid.nodes()[j];
      cx y(0.0);
      for (auto it = taylor.rbegin(); it != taylor.rend(); ++it) y = y * z + *it;
      out[j] = y;
    }
    return out;
  }
  std::vector<cx> bins(n, cx(0.0));
  for (int k = 0; k < len; ++k) {
    double ph = kPi * k / n;
    bins[k] = taylor[k] * cx(std::cos(ph), std::sin(ph));
  }
  grid.ifft(bins);
  return bins;
}

// ---------------------------------------------------------------------------
// FunctionSpec / sample
// ---------------------------------------------------------------------------

FunctionSpec FunctionSpec::make_rational(Poly num, Poly den) {
  if (den.is_zero()) fail(ErrorKind::InvalidInput, "rational spec with zero denominator");
  FunctionSpec s;
  s.type = Type::Rational;
  s.rational = {std::move(num), std::move(den)};
  return s;
}

FunctionSpec FunctionSpec::make_taylor(std::vector<cx> coeffs) {
  FunctionSpec s;
  s.type = Type::Taylor;
  s.taylor = std::move(coeffs);
  return s;
}

FunctionSpec FunctionSpec::make_samples(int n, std::vector<cx> values) {
  FunctionSpec s;
  s.type = Type::Samples;
  s.samples_n = n;
  s.samples = std::move(values);
  return s;
}

bool FunctionSpec::is_polynomial() const {
  if (type == Type::Taylor) return true;
  if (type == Type::Rational) return rational.den.degree() == 0;
  return false;
}

std::vector<cx> FunctionSpec::jet_at(cx node, int count) const {
  if (type == Type::Rational) {
    std::vector<cx> t = rational.taylor_at(node, count);
    double fact = 1.0;
    for (int i = 0; i < count; ++i) {
      t[i] *= fact;
      fact *= double(i + 1);
    }
    return t;
  }
  if (type == Type::Taylor) {
    Poly p{taylor};
    std::vector<cx> jet(count);
    for (int i = 0; i < count; ++i) jet[i] = p.eval_derivative(node, i);
    return jet;
  }
  fail(ErrorKind::InvalidInput, "jets of a sampled spec need spectral differentiation");
}

BoundaryFn sample(const FunctionSpec& spec, const GridPtr& grid) {
  const int n = grid->size();
  std::vector<cx> vals(n);
  switch (spec.type) {
    case FunctionSpec::Type::Rational: {
      double min_den = 1e300;
      for (int j = 0; j < n; ++j) {
        cx d = spec.rational.den.eval(grid->nodes()[j]);
        min_den = std::min(min_den, std::abs(d));
        vals[j] = spec.rational.num.eval(grid->nodes()[j]) / d;
      }
      if (min_den < 1e-8) {
        std::ostringstream os;
        os << "denominator modulus " << min_den << " on the grid";
        fail(ErrorKind::PoleNearBoundary, os.str());
      }
      break;
    }
    case FunctionSpec::Type::Taylor: {
      Poly p{spec.taylor};
      for (int j = 0; j < n; ++j) vals[j] = p.eval(grid->nodes()[j]);
      break;
    }
    case FunctionSpec::Type::Samples: {
      if (spec.samples_n != n || static_cast<int>(spec.samples.size()) != n)
        fail(ErrorKind::GridMismatch, "sampled spec length " + std::to_string(spec.samples_n) +
                                          " vs grid " + std::to_string(n));
      vals = spec.samples;
      break;
    }
  }
  return BoundaryFn(grid, std::move(vals));
}

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

AnalyticFn analytic_project(const BoundaryFn& f) {
  const int n = f.size();
  AnalyticFn out;
  out.grid_n = n;
  out.taylor.resize(n / 2);
  for (int k = 0; k < n / 2; ++k) out.taylor[k] = f.c(k);
  double tail = std::norm(f.c(n / 2));
  for (int k = -n / 2 + 1; k < 0; ++k) tail += std::norm(f.c(k));
  out.tail_mass = std::sqrt(tail);
  return out;
}

double near_negative_mass(const BoundaryFn& f, int window) {
  double mass = 0.0;
  for (int k = -window + 1; k < 0; ++k) mass += std::norm(f.c(k));
  return std::sqrt(mass);
}

AnalyticFn toeplitz_coanalytic(const BoundaryFn& a, const BoundaryFn& f) {
  if (a.size() != f.size())
    fail(ErrorKind::GridMismatch, "toeplitz symbol and argument on different grids");
  std::vector<cx> prod(a.size());
  for (int j = 0; j < a.size(); ++j) prod[j] = std::conj(a.samples()[j]) * f.samples()[j];
  return analytic_project(BoundaryFn(a.grid(), std::move(prod)));
}

AnalyticFn herglotz(const BoundaryFn& w) {
  const int n = w.size();
  double max_ab = std::max(1.0, w.max_abs());
  double min_re = 1e300, max_im = 0.0;
  for (const auto& s : w.samples()) {
    min_re = std::min(min_re, s.real());
    max_im = std::max(max_im, std::abs(s.imag()));
  }
  if (max_im > 1e-12 * max_ab)
    fail(ErrorKind::NegativeWeight, "weight is not real-valued on the grid");
  if (min_re < -1e-12)
    fail(ErrorKind::NegativeWeight, "weight has a negative sample " + std::to_string(min_re));

  AnalyticFn out;
  out.grid_n = n;
  out.taylor.resize(n / 2);
  out.taylor[0] = w.c(0);
  for (int k = 1; k < n / 2; ++k) out.taylor[k] = 2.0 * w.c(k);
  out.tail_mass = 2.0 * std::abs(w.c(n / 2));
  return out;
}

CauchyTimesPResult cauchy_times_p(const BoundaryFn& h, const Poly& p) {
  const int n = h.size();
  const auto& nodes = h.grid()->nodes();

  CauchyTimesPResult out;
  out.min_abs_p_on_grid = 1e300;
  std::vector<cx> u(n);
  for (int j = 0; j < n; ++j) {
    cx pv = p.eval(nodes[j]);
    double ab = std::abs(pv);
    out.min_abs_p_on_grid = std::min(out.min_abs_p_on_grid, ab);
    if (ab < 1e-12)
      fail(ErrorKind::RootOnNode, "p vanishes at a grid node; regenerate the grid");
    u[j] = (ab / pv) * std::abs(h.samples()[j]);
  }
  BoundaryFn ub(h.grid(), std::move(u));
  AnalyticFn proj = analytic_project(ub);

  // F = p * quotient at exact bandwidth: the quotient is truncated first so
  // the product fits in n/2 coefficients and F = p * (F/p) holds as a
  // coefficient identity (truncating the product instead would break it near
  // the roots of p).  Downstream consumers must use this same quotient.
  // A raised-cosine taper on the top coefficients keeps the band edge
  // spectrally smooth; a hard cut would leak through later divisions into
  // anti-analytic mass at the 1/n level.
  const int degp = std::max(p.degree(), 0);
  const int flen = n / 2;
  const int glen = std::max(flen - degp, 0);
  out.quotient.grid_n = n;
  out.quotient.taylor.assign(proj.taylor.begin(),
                             proj.taylor.begin() + std::min<int>(glen, int(proj.taylor.size())));
  for (auto& t : out.quotient.taylor) t *= 2.0;
  const int len = static_cast<int>(out.quotient.taylor.size());
  const int width = std::min(len / 4, 256);
  for (int j = 0; j < width; ++j) {
    double t = double(j + 1) / width;
    out.quotient.taylor[len - width + j] *= 0.5 * (1.0 + std::cos(kPi * t));
  }
  out.quotient.tail_mass = 0.0;
  out.f.grid_n = n;
  out.f.taylor.assign(flen, cx(0.0));
  for (int i = 0; i < static_cast<int>(out.quotient.taylor.size()); ++i)
    for (int j = 0; j <= degp; ++j)
      out.f.taylor[i + j] += out.quotient.taylor[i] * p.coeff(j);
  out.f.tail_mass = 0.0;

  // Consistency certificate: dividing the synthesized F by p pointwise must
  // leave only negligible resolvable anti-analytic mass.
  std::vector<cx> ftr = out.f.trace(*h.grid());
  for (int j = 0; j < n; ++j) ftr[j] /= p.eval(nodes[j]);
  BoundaryFn div(h.grid(), std::move(ftr));
  double nrm = div.norm();
  out.quotient_tail_rel = (nrm > 0) ? near_negative_mass(div, n / 8) / nrm : 0.0;
  return out;
}

DiskValue eval_in_disk(const AnalyticFn& f, cx z) {
  double az = std::abs(z);
  if (az > 1.0 - 1e-6)
    fail(ErrorKind::TooCloseToBoundary, "evaluation requires |z| <= 1 - 1e-6");
  cx y(0.0);
  for (auto it = f.taylor.rbegin(); it != f.taylor.rend(); ++it) y = y * z + *it;
  double bound = f.tail_mass * std::pow(az, double(f.taylor.size())) / (1.0 - az);
  return {y, bound};
}

double hardy_norm(const AnalyticFn& f) {
  double s = 0.0;
  for (const auto& t : f.taylor) s += std::norm(t);
  return std::sqrt(s);
}

double hardy_norm_with_tail(const AnalyticFn& f) {
  return std::hypot(hardy_norm(f), f.tail_mass);
}

// ---------------------------------------------------------------------------
// Outerness
// ---------------------------------------------------------------------------

OuterCert outerness_test(const FunctionSpec& spec, double snap_tol) {
  if (spec.type == FunctionSpec::Type::Samples)
    fail(ErrorKind::InvalidInput, "use outerness_test_sampled for grid data");
  Poly num = (spec.type == FunctionSpec::Type::Rational) ? spec.rational.num : Poly{spec.taylor};
  if (num.is_zero()) fail(ErrorKind::ZeroFunction, "outerness of the zero function");

  OuterCert cert;
  cert.route = "roots";
  if (num.degree() == 0) {
    cert.outer = true;
    cert.margin = 1.0;
    cert.detail = "constant numerator";
    return cert;
  }
  RootSet rs = roots(num);
  double min_mod = 1e300;
  for (const auto& e : rs.entries) min_mod = std::min(min_mod, std::abs(e.location));
  cert.margin = min_mod - 1.0;
  cert.outer = min_mod >= 1.0 - snap_tol;
  std::ostringstream os;
  os << "min root modulus " << min_mod;
  cert.detail = os.str();
  return cert;
}

OuterCert outerness_test_sampled(const BoundaryFn& trace, cx value_at_zero, double tol) {
  if (trace.norm() == 0.0) fail(ErrorKind::ZeroFunction, "outerness of the zero function");
  OuterCert cert;
  cert.route = "logmean";
  if (std::abs(value_at_zero) < 1e-300) {
    cert.outer = false;
    cert.margin = -1e300;
    cert.detail = "vanishes at the origin";
    return cert;
  }
  double mean = 0.0;
  for (const auto& s : trace.samples()) mean += std::log(std::max(std::abs(s), 1e-300));
  mean /= trace.size();
  double defect = mean - std::log(std::abs(value_at_zero));
  cert.margin = -defect;
  cert.outer = defect <= tol;
  std::ostringstream os;
  os << "Jensen defect " << defect;
  cert.detail = os.str();
  return cert;
}

}  // namespace hbs
