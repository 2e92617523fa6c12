#pragma once

#include "hbs/boundary.hpp"
#include "hbs/pythagoras.hpp"

namespace hbs {

/// f = a1 * g + polyPart with deg polyPart <= N - 1.
struct HbDecomposition {
  AnalyticFn g;
  Poly poly_part;
  double residual = 0.0;  // max grid |f - a1 g - polyPart|
  double g_tail = 0.0;    // anti-analytic mass left in the H^2 factor
};

struct MultiplierCert {
  bool in_space = false;
  double membership_residual = 0.0;
  double sup_phi = 0.0;        // grid sup of |phi|
  double sup_a1_gtilde = 0.0;  // grid sup of |a1 * gtilde|
  bool sup_stable = false;     // < 1% growth under one grid doubling
  bool stability_checked = false;
  bool verdict = false;
};

struct CyclicityCert {
  OuterCert outer;
  Poly gcd_witness;                 // gcd_approx(a1, r)
  std::vector<cx> boundary_values;  // psi(xi_j)
  bool verdict = false;             // outer and gcd == 1
  bool verdict_boundary = false;    // outer and |psi(xi_j)| > tol for all j
};

struct SpaceParams {
  int grid_n = 4096;
  double membership_tol = 1e-6;  // relative
  double gcd_tol = 1e-6;
  double boundary_value_tol = 1e-8;
};

/**
 * Split f into a1 * g + polyPart: polyPart interpolates f's jets of order m_j
 * at each circle zero of a1 and g is the analytic projection of
 * (f - polyPart)/a1.  With N = 0 the polynomial part is zero and g = f.
 * NotInSpace when the residual or the tail of g exceeds the tolerance.
 */
HbDecomposition decompose(const FunctionSpec& f, const PythagoreanPair& pair,
                          const SpaceParams& params = {});

/// Equivalent norm: sqrt(||g||^2 + ||polyPart||^2).
double hb_norm(const HbDecomposition& d);

/// Membership via the decomposition; never throws NotInSpace.
std::pair<bool, double> membership_test(const FunctionSpec& f, const PythagoreanPair& pair,
                                        double tol = 1e-6, int grid_n = 4096);

/// Multiplier = member of the space whose grid sup (and the sup of a1*gtilde)
/// stays below 1e6 and grows by < 1% under one grid doubling.
MultiplierCert is_multiplier(const FunctionSpec& phi, const PythagoreanPair& pair,
                             const SpaceParams& params = {});

/**
 * Cyclicity of a multiplier psi: outer and gcd(a1, r) = 1 where r is the
 * polynomial part of psi's decomposition.  The certificate also carries the
 * independent boundary-value route (psi(xi_j) != 0 for every j), evaluated
 * directly from the spec.  NotMultiplier when the precondition fails.
 */
CyclicityCert is_cyclic(const FunctionSpec& psi, const PythagoreanPair& pair,
                        const SpaceParams& params = {});

/// Reproducing kernel (1 - b(z) conj(b(lambda)))/(1 - conj(lambda) z).
cx kernel_eval(const RationalFn& b, cx lambda, cx z);

/// Jets of a sampled spec via spectral differentiation of the projected
/// Fourier series (accuracy limited by the coefficient decay).
std::vector<cx> spectral_jet(const BoundaryFn& f, cx node, int count);

}  // namespace hbs
