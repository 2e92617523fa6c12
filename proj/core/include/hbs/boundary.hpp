#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hbs/poly.hpp"

namespace hbs {

/**
 * Uniform circle grid with a half-bin offset: nodes exp(2*pi*i*(j+1/2)/n).
 * No node is a root of unity of order dividing n, so z = 1 and z = -1 (and
 * every snapped boundary zero of the pipeline polynomials at rational angles
 * of the grid) never coincide with a sample point.
 */
class BoundaryGrid {
 public:
  /// n must be a power of two, 64 <= n <= 2^20.
  static std::shared_ptr<const BoundaryGrid> make(int n);

  int size() const { return n_; }
  const std::vector<cx>& nodes() const { return nodes_; }

  /// Unscaled forward/inverse FFT over the grid length.
  void fft(std::vector<cx>& a) const;
  void ifft(std::vector<cx>& a) const;

 private:
  explicit BoundaryGrid(int n);
  int n_;
  std::vector<cx> nodes_;
  std::vector<cx> twiddle_;
  std::vector<unsigned> rev_;
};

using GridPtr = std::shared_ptr<const BoundaryGrid>;

/**
 * Function on the circle held as grid samples with its discrete Fourier
 * coefficients computed once at construction.  Coefficient index k runs over
 * (-n/2, n/2]; c(k) approximates the integral of f(e^{it}) e^{-ikt} dt/2pi.
 */
class BoundaryFn {
 public:
  BoundaryFn(GridPtr grid, std::vector<cx> samples);

  const GridPtr& grid() const { return grid_; }
  int size() const { return grid_->size(); }
  const std::vector<cx>& samples() const { return samples_; }
  bool real_valued() const { return real_valued_; }

  /// Fourier coefficient for k in (-n/2, n/2]; zero outside.
  cx c(int k) const;

  double max_abs() const;
  /// L2(m) norm: sqrt(mean |f|^2) over the grid.
  double norm() const;

 private:
  GridPtr grid_;
  std::vector<cx> samples_;
  std::vector<cx> spectrum_;  // indexed by FFT bin, normalized, half-bin phased
  bool real_valued_;
};

/**
 * Truncated Taylor series t_0..t_{L-1} together with the l2 mass that the
 * truncation discarded (negative frequencies plus the Nyquist bin, so that
 * hardy_norm^2 + tailMass^2 reproduces the grid norm exactly).
 */
struct AnalyticFn {
  std::vector<cx> taylor;
  double tail_mass = 0.0;
  int grid_n = 0;

  cx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(taylor.size())) ? taylor[k] : cx(0.0);
  }
  AnalyticFn scaled(cx s) const;
  AnalyticFn plus(const AnalyticFn& other) const;
  AnalyticFn minus(const AnalyticFn& other) const;
  /// Coefficient product with a polynomial, truncated at the source length;
  /// spilled mass is folded into tail_mass.
  AnalyticFn times_poly(const Poly& p) const;
  /// Samples of the truncated series on a grid (exact synthesis).
  std::vector<cx> trace(const BoundaryGrid& grid) const;
};

/// Input descriptions accepted by sample() and the CLI.
struct FunctionSpec {
  enum class Type { Rational, Taylor, Samples };
  Type type = Type::Taylor;
  RationalFn rational;
  std::vector<cx> taylor;
  int samples_n = 0;
  std::vector<cx> samples;

  static FunctionSpec make_rational(Poly num, Poly den);
  static FunctionSpec make_taylor(std::vector<cx> coeffs);
  static FunctionSpec make_samples(int n, std::vector<cx> values);
  bool is_polynomial() const;
  /// For Rational/Taylor specs: f(node), ..., f^(m-1)(node).
  std::vector<cx> jet_at(cx node, int count) const;
};

/// Evaluate a spec on a grid.  Rational specs report the denominator's
/// minimum modulus; PoleNearBoundary below 1e-8.
BoundaryFn sample(const FunctionSpec& spec, const GridPtr& grid);

/// P+: keep frequencies 0..n/2-1, report the discarded mass.
AnalyticFn analytic_project(const BoundaryFn& f);

/// l2 mass of the frequencies in (-window, 0): the anti-analytic content
/// resolvable at the grid bandwidth.  Mass parked next to -n/2 is the alias
/// image of the band edge, not evidence against analyticity.
double near_negative_mass(const BoundaryFn& f, int window);

/// Band-limited resampling at the nodes rotated by bin_fraction of one bin:
/// values of the trigonometric interpolant at exp(2 pi i (j + 1/2 + frac)/n).
std::vector<cx> resample_shifted(const BoundaryFn& f, double bin_fraction);

/// P+(conj(a) * f): the co-analytic Toeplitz operator applied elementwise.
AnalyticFn toeplitz_coanalytic(const BoundaryFn& a, const BoundaryFn& f);

/// Herglotz transform of a nonnegative weight: t_0 = c_0(w), t_k = 2 c_k(w).
/// The real part of the result is the Poisson extension of w.
AnalyticFn herglotz(const BoundaryFn& w);

struct CauchyTimesPResult {
  AnalyticFn f;         ///< F = p * (2 * P+ of (|p|/p)|h|)
  AnalyticFn quotient;  ///< F / p as a series (the H^2 factor g with F = p g)
  double quotient_tail_rel;  ///< relative anti-analytic mass of F/p on the grid
  double min_abs_p_on_grid;
};

/// The p-weighted Cauchy transform.  Roots of p must stay 1e-12 away from
/// every node (RootOnNode otherwise).
CauchyTimesPResult cauchy_times_p(const BoundaryFn& h, const Poly& p);

struct DiskValue {
  cx value;
  double error_bound;  // tail_mass * |z|^L / (1 - |z|)
};

/// Truncated Taylor sum; requires |z| <= 1 - 1e-6.
DiskValue eval_in_disk(const AnalyticFn& f, cx z);

/// sqrt of the coefficient l2 mass (tail excluded; see hardy_norm_with_tail).
double hardy_norm(const AnalyticFn& f);
double hardy_norm_with_tail(const AnalyticFn& f);

struct OuterCert {
  std::string route;  // "roots" | "logmean"
  bool outer = false;
  double margin = 0.0;  // roots: min |root| - 1; logmean: -defect
  std::string detail;
};

/// Outerness of a rational/taylor spec through root location (default grid
/// used only for degenerate detection), or of grid samples through the Jensen
/// log-modulus mean test with tolerance 1e-6.
OuterCert outerness_test(const FunctionSpec& spec, double snap_tol = 1e-6);
OuterCert outerness_test_sampled(const BoundaryFn& trace, cx value_at_zero, double tol = 1e-6);

}  // namespace hbs
