#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hbs/smirnov.hpp"

namespace hbs {

struct SelftestConfig {
  int grid_n = 4096;
  bool adaptive = true;
  double tol_membership = 1e-6;
  double tol_factorization = 1e-6;
  double tol_mate = 1e-8;
  double gcd_tol = 1e-6;
  double snap_tol = 1e-6;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double margin = 0.0;  // smallest slack against the binding threshold
  std::string detail;
};

struct SelftestReport {
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
};

/// Run the ten-part acceptance battery.  Numerical machinery failures
/// (NonConvergence, RouteMismatch outside the deliberate coarse-grid probe)
/// propagate as exceptions.
SelftestReport run_selftest(const SelftestConfig& config = {});

/// Deterministic, platform-independent generator used by the battery.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next();
  double uniform(double lo = 0.0, double hi = 1.0);
  cx box(double half_width);              // uniform square
  cx annulus(double r_lo, double r_hi);   // uniform radius and angle
  cx unit();                              // uniform on the circle
 private:
  std::uint64_t state_;
};

}  // namespace hbs
