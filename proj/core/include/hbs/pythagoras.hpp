#pragma once

#include "hbs/boundary.hpp"
#include "hbs/poly.hpp"

namespace hbs {

/**
 * Rational b together with its Pythagorean mate a (|a|^2 + |b|^2 = 1 on the
 * circle, a(0) > 0, a outer), the monic polynomial a1 collecting the
 * unit-circle zeros of a with multiplicity, and the verification certificates.
 */
struct PythagoreanPair {
  RationalFn b;
  RationalFn a;
  Poly a1 = Poly::constant(cx(1.0));
  int n_total = 0;  // N = sum of boundary multiplicities
  RootSet boundary_zeros;

  double mate_residual = 0.0;  // max | |a|^2 + |b|^2 - 1 | on the grid
  double corona_min = 0.0;     // min |a| + |b| over the probe set
  double outer_margin = 0.0;   // min numerator-root modulus of a, minus 1
};

/// True iff | |b| - 1 | <= 1e-8 at every grid node.  NotInBall when the grid
/// sup of |b| exceeds 1 + 1e-9.
bool is_inner_rational(const RationalFn& b, int grid_n = 4096);

struct FejerRieszResult {
  Poly r;
  double residual;           // max | |r|^2 - t | on the check grid
  RootSet boundary_roots;    // circle zeros of r with multiplicities
};

/**
 * Spectral factorization of a nonnegative trigonometric polynomial: given
 * conjugate-symmetric Laurent coefficients c_{-d}..c_d with t >= 0 on the
 * circle, returns r of degree d with |r|^2 = t there and no roots in the open
 * disk.  Normalization: r(0) real >= 0 when r(0) != 0, otherwise the leading
 * coefficient phase is zero.
 *
 * Roots of the Laurent lift z^d t(z) come in 1/conj pairs; the factor takes
 * the roots outside the circle plus each boundary root at half its (even)
 * multiplicity.  NotNonnegative if t dips below -1e-12 or a boundary root has
 * odd multiplicity.
 */
FejerRieszResult fejer_riesz_full(const std::vector<cx>& laurent, double snap_tol = 1e-6);
Poly fejer_riesz(const std::vector<cx>& laurent, double snap_tol = 1e-6);

/**
 * Pythagorean mate of a rational, non-inner b.  Writes b = p_b/q_b with q_b
 * zero-free on the closed disk, factors |q_b|^2 - |p_b|^2, rescales so that
 * a(0) > 0, and extracts a1.  InnerInput when b is inner; NotInBall when the
 * grid sup of |b| exceeds 1 + 1e-9.
 */
PythagoreanPair mate(const RationalFn& b, int grid_n = 4096, double snap_tol = 1e-6);

/// Circle zeros of a's numerator, snapped radially within snap_tol; zeros off
/// the circle are discarded (they define invertible factors).
std::pair<Poly, int> extract_unimodular(const RationalFn& a, double snap_tol = 1e-6);
std::pair<Poly, int> extract_unimodular(const RationalFn& a, double snap_tol, RootSet* boundary_out);

/// min(|a| + |b|) over grid nodes scaled to radii {0, .25, .5, .75, .9, .99}
/// plus the boundary; strictly positive for a valid pair.
double corona_check(const PythagoreanPair& pair, int probe_count = 256);

}  // namespace hbs
