#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "hbs/errors.hpp"

namespace hbs {

using cx = std::complex<double>;

/**
 * Complex polynomial with coefficients stored in ascending degree.
 *
 * The zero polynomial is the empty coefficient list (degree -1).  A nonzero
 * polynomial always has a nonzero leading coefficient; the constructor trims
 * trailing exact zeros to keep that invariant.
 */
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly constant(cx c) { return Poly({c}); }
  static Poly variable() { return Poly({cx(0.0), cx(1.0)}); }
  /// Monic product of (z - root)^multiplicity over the given list.
  static Poly from_roots(const std::vector<std::pair<cx, int>>& roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<cx>& coeffs() const { return coeffs_; }
  cx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : cx(0.0);
  }
  cx leading() const { return coeffs_.empty() ? cx(0.0) : coeffs_.back(); }

  /// Horner evaluation; exact for degree <= 0.
  cx eval(cx z) const;
  /// Evaluate the k-th derivative at z.
  cx eval_derivative(cx z, int order) const;

  Poly derivative() const;
  Poly monic() const;
  /// Keep coefficients of degree <= max_degree.
  Poly truncated(int max_degree) const;
  /// Taylor shift: returns q with q(s) = p(a + s).
  Poly shifted(cx a) const;
  /// Synthetic division by (z - r); the remainder is discarded.
  Poly deflated(cx r) const;
  /// Drop trailing coefficients with |c| <= tol * max|c|.
  Poly pruned(double tol) const;

  double coeff_inf_norm() const;
  double coeff_l2_norm() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(cx s, const Poly& p);

 private:
  void trim();
  std::vector<cx> coeffs_;
};

struct RootEntry {
  cx location;
  int multiplicity;
};

/// Roots of a polynomial with multiplicities recovered by clustering.
struct RootSet {
  std::vector<RootEntry> entries;
  double residual = 0.0;  // max |p(location)| over entries

  int total_multiplicity() const {
    int n = 0;
    for (const auto& e : entries) n += e.multiplicity;
    return n;
  }
};

/**
 * All roots of p with multiplicities.
 *
 * Aberth-Ehrlich simultaneous iteration from deterministic starting points on
 * a circle of radius 1 + max|c_i/c_deg|, iteration cap 500.  Stops when the
 * largest update falls below 1e-13 or every iterate reaches its backward-error
 * floor.  Approximations within cluster_tol are merged and the merged root is
 * re-polished by Newton on the (m-1)-th derivative; wider merges (up to 3e-4)
 * are accepted only when the multiple-root hypothesis validates against the
 * derivative residuals, which is what recovers multiplicities >= 3.
 *
 * Throws NonConvergence if the iteration cap is reached first.
 */
RootSet roots(const Poly& p, double cluster_tol = 1e-6);

/**
 * Monic approximate gcd decided by cross-matching root sets within tol.
 * Returns the constant 1 when no common root exists.
 */
Poly gcd_approx(const Poly& p, const Poly& q, double tol = 1e-6);

struct BezoutResult {
  Poly q;
  Poly s;
  double residual;  // coefficient inf-norm of q*r - a1*s - 1
};

/// Solve q*r = a1*s + 1 with deg q < deg a1 and deg s < deg r.
/// Throws NotCoprime when gcd_approx(a1, r) is not constant.
BezoutResult bezout(const Poly& a1, const Poly& r, double tol = 1e-6);

struct HermiteNode {
  cx node;
  std::vector<cx> jet;  // f(node), f'(node), ..., f^(m-1)(node)
};

/**
 * Unique polynomial of degree <= N-1 matching all jets, N = total jet count.
 * Solved through the confluent Vandermonde system; SingularSystem when two
 * nodes coincide within 1e-8 or the system is rank deficient.
 */
Poly hermite_interpolant(const std::vector<HermiteNode>& nodes);

/**
 * max |p| on the unit circle: coarse grid scan plus a golden-section
 * refinement around the argmax.  grid_size is clamped up to 4*(degree+1).
 */
double sup_norm_on_circle(const Poly& p, int grid_size = 0);

/// Quotient of polynomials; the carrier for b, a, h and test functions.
struct RationalFn {
  Poly num;
  Poly den = Poly::constant(cx(1.0));

  cx eval(cx z) const { return num.eval(z) / den.eval(z); }
  /// Taylor coefficients of num/den about `center`, length `count`.
  /// Requires den(center) != 0.
  std::vector<cx> taylor_at(cx center, int count) const;
  /// Cancel common roots of num and den within tol.
  RationalFn reduced(double tol = 1e-6) const;
};

/// Long division: num = quot * den + rem with deg rem < deg den.
std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den);

/// Power-series helpers used across the factorization pipeline.
std::vector<cx> series_mul(const std::vector<cx>& a, const std::vector<cx>& b, int len);
std::vector<cx> series_inverse(const std::vector<cx>& a, int len);

}  // namespace hbs
