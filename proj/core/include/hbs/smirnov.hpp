#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hbs/space.hpp"

namespace hbs {

// ---------------------------------------------------------------------------
// Partial fractions of the p-weighted Cauchy kernel
// ---------------------------------------------------------------------------

struct PartialFractionTerm {
  cx root;
  int multiplicity;
  std::vector<Poly> polys;  // polys[l-1] = p_{k,l}, 1 <= l <= multiplicity
};

struct PartialFractionTable {
  std::vector<PartialFractionTerm> terms;
  double probe_residual = 0.0;  // identity check at deterministic (z, t) probes
};

/**
 * Polynomials p_{k,l} with
 *   w p(z) / ((w - z) p(w)) = z/(w - z) + sum_{k,l} p_{k,l}(z)/(xi_k - w)^l
 * for w on the circle, computed by residue calculus in w and verified at
 * probe points.  All roots of p must be unimodular (RootNotUnimodular).
 * A constant p yields an empty table (the identity then carries an extra
 * constant term, which correction_poly accounts for).
 */
PartialFractionTable partial_fraction_table(const Poly& p, double snap_tol = 1e-6);

/// w = |p h| as real nonnegative samples.
BoundaryFn weight(const BoundaryFn& h, const Poly& p);

struct CorrectionResult {
  Poly q;         // spectral route: Taylor(F - F0) truncated below deg p
  Poly q_moment;  // moment route: -c_0(w) + 2 sum p_{k,l} M_{k,l}
  double route_gap;   // coefficient inf-norm of the difference
  double tail_bound;  // largest |coefficient| of F - F0 at degree >= deg p
};

/**
 * The correction polynomial q with F = F0 + q, computed along both routes.
 * Throws RouteMismatch when they disagree beyond 1e-6 (relative to the
 * coefficient scale) - the signal to double the grid.
 */
CorrectionResult correction_poly(const BoundaryFn& h, const Poly& p, double snap_tol = 1e-6);

/// Scale c = min(1, 1/(2 sup|q|)) so that sup |c q| <= 1/2 on the closed disk.
double rescale(const Poly& q);

// ---------------------------------------------------------------------------
// The H^2 factorization h = u/(p v + 1)
// ---------------------------------------------------------------------------

struct SmirnovCerts {
  double residual = 0.0;  // max grid |h (p v + 1) - u| over the pipeline samples
  double sup_pu = 0.0;    // sup |p u| * scale  (= sup |p alpha_c|)
  double sup_phq = 0.0;   // sup |p h_c/(F0_c+1)|, bounded by 1 by construction
  double sup_pv = 0.0;    // sup |p v|
  double min_q = 0.0;     // 1 - sup|q_c|: lower bound of |Q| on the closed disk
  // Relative anti-analytic mass left when projecting the boundary data of u,
  // v, and F/p.
  double tail_u = 0.0, tail_v = 0.0, tail_fp = 0.0;
  double route_gap = 0.0;
  double re_f0_min = 0.0;  // min Re F0_c over disk probes
  double abs_d_min = 0.0;  // min |F0_c + 1| over disk probes
  bool denom_outer_structural = false;
  OuterCert denom_outer_jensen;
  double max_abs_h = 0.0;

  bool pass(double tol) const;
};

struct SmirnovFactorization {
  AnalyticFn u, v;  // truncated coefficient views; tail_mass = truncation loss
  Poly p;
  double scale = 1.0;
  int grid_n = 0;
  bool degenerate = false;  // h identically zero: u = v = 0
  SmirnovCerts certs;
  /// Pipeline boundary data at grid_n (the certificate ground truth).
  std::vector<cx> u_samples, v_samples;
};

struct FactorParams {
  int grid_n = 4096;
  bool adaptive = true;
  int max_grid_n = 65536;
  double tol = 1e-6;       // reconstruction tolerance, relative to 1 + max|h|
  double tail_tol = 1e-6;  // relative anti-analytic mass tolerance
  double snap_tol = 1e-6;
};

using Sampler = std::function<BoundaryFn(const GridPtr&)>;

/**
 * Factor h = u/(p v + 1) with u, v in H^2, pu, pv bounded and p v + 1 outer,
 * for a polynomial p with all roots on the circle.  The correction polynomial
 * is degree-1 homogeneous in h, so the rescale factor is computed once from
 * the unscaled q; v is built from the scaled data and never unscaled.
 *
 * With adaptive set, certificate failures double the grid up to max_grid_n;
 * otherwise RouteMismatch and tail failures surface as stated.
 */
SmirnovFactorization factor_h2(const FunctionSpec& h, const Poly& p,
                               const FactorParams& params = {});
SmirnovFactorization factor_h2_sampled(const Sampler& sampler, const Poly& p,
                                       const FactorParams& params = {});

// ---------------------------------------------------------------------------
// The space factorization f = (phi + polyPart psi)/psi
// ---------------------------------------------------------------------------

/// Multiplier in structured form: phi = a1 * g_tilde + r.  Pipeline-produced
/// multipliers also carry their boundary samples; they are the accurate
/// representation when g_tilde has slow spectral decay.
struct HbMultiplier {
  AnalyticFn g_tilde;
  Poly r;
  std::vector<cx> samples;
  int samples_grid_n = 0;

  /// Synthesis from the structured parts (truncation-limited).
  std::vector<cx> trace(const PythagoreanPair& pair, const BoundaryGrid& grid) const;
  /// Stored samples when the grid matches, structural trace otherwise.
  std::vector<cx> samples_on(const PythagoreanPair& pair, const GridPtr& grid) const;
  cx value_at_zero(const PythagoreanPair& pair) const;
};

struct HbSmirnovResult {
  HbMultiplier numerator;    // phi = a1 u, r1 = 0
  HbMultiplier denominator;  // psi = a1 v + 1, r2 = 1
  Poly poly_part;            // from the decomposition of f
  SmirnovFactorization h2;   // the inner factorization of the H^2 factor
  CyclicityCert denominator_cyclic;
  double residual = 0.0;  // max grid |f psi - (phi + polyPart psi)|
  double max_abs_f = 0.0;
  int grid_n = 0;
  bool short_circuit = false;  // polynomial input: psi = 1 directly
};

/// Factor a member of the space over its multiplier algebra.  NotInSpace when
/// the membership precondition fails.
HbSmirnovResult factor_hb(const FunctionSpec& f, const PythagoreanPair& pair,
                          const FactorParams& params = {});

// ---------------------------------------------------------------------------
// Algebra closure
// ---------------------------------------------------------------------------

enum class CombineMode { Sum, Product };

struct HbFraction {
  HbMultiplier num;
  HbMultiplier den;
};

struct CombineCerts {
  double residual = 0.0;           // grid identity residual of the combination
  double num_membership = 0.0;     // structural residual of the numerator
  double den_membership = 0.0;
  double num_tail = 0.0, den_tail = 0.0;
  CyclicityCert den_cyclic;
  bool pass = false;
};

/**
 * Sum or product of two verified fractions over the same pair:
 * (phi1 psi2 + phi2 psi1, psi1 psi2) or (phi1 phi2, psi1 psi2).  The
 * structured parts are recombined exactly (polynomial parts reduced mod a1)
 * and re-certified on the grid.  CertificationFailure when re-verification
 * fails.
 */
HbFraction combine(const HbFraction& f1, const HbFraction& f2, CombineMode mode,
                   const PythagoreanPair& pair, const FactorParams& params = {},
                   CombineCerts* certs_out = nullptr);

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct VerifyLine {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyLine> lines;
  int grid_n = 0;
  bool pass = false;
};

/// Recompute every side condition from scratch at doubled grid resolution
/// against the stored artifacts.
VerifyReport verify(const SmirnovFactorization& fact, const FunctionSpec& h, double tol,
                    const FactorParams& params = {});
VerifyReport verify_hb(const HbSmirnovResult& result, const FunctionSpec& f,
                       const PythagoreanPair& pair, double tol, const FactorParams& params = {});

}  // namespace hbs
