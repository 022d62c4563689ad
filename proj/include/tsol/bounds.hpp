#pragma once

#include "tsol/profile_ode.hpp"

#include <array>
#include <string>
#include <vector>

namespace tsol {

// One tag per checkable inequality or identity along a profile. The first 15
// form the canonical suite run by check_all, in this order. FUNNEL_CONTAINMENT
// is issued by the funnel module's containment check only.
enum class BoundId {
  PHI_ENVELOPE,          // 0 <= phi(r) <= r/(n-1) on [R*, inf)
  PHI_MONOTONE,          // phi nondecreasing on the grid
  MONOTONICITY_IDENTITY, // integral representation of phi, residual form
  CAUCHY_SCHWARZ,        // phi >= (r-R*)/(n-1) - sqrt((n-1)/2) (int t/(1+phi^2))^(1/2)
  FIRST_LOWER,           // phi >= alpha_n (r-R*)/(n-1)
  BETA_LOG_LOWER,        // closed-form log refinement of CAUCHY_SCHWARZ
  REFINED_LOWER,         // phi >= (r-4R*)/(n-1) - 24/r, only for r >= max(R*, 1)
  V_QUADRATIC_LOWER,     // V - V(R*) >= alpha_n (r-R*)^2 / (2(n-1))
  V_LOG_LOWER,           // V - V(R*) >= (r-R*)^2/(2(n-1)) - 24 log(r/R*) - 9R*^2/(2(n-1))
  SUP_RATIO,             // sup r/(1+phi^2) <= R* + (n-1)/(2 alpha_n)
  UPPER_BRANCH_HEIGHT,   // V <= (r^2 - R^2)/(2(n-1)) + 1 on the upper branch
  UPPER_BRANCH_RADIUS,   // r(x) >= sqrt(2(n-1)(x-1+e^-x) + R^2) and r'(x) >= 0
  R_STAR_WINDOW,         // R* <= R + pi/2
  DEPTH_BOUND,           // d <= (pi/2) R* / (n-1)
  SLOPE_LIMIT,           // |(n-1)phi/r - 1| <= 2(n-1)/r^2 for r >= 10 R*
  FUNNEL_CONTAINMENT,    // wall sandwich f_- <= V <= f_+ (reported by the funnel module)
};

constexpr std::array<BoundId, 15> all_bound_ids = {
    BoundId::PHI_ENVELOPE,      BoundId::PHI_MONOTONE,    BoundId::MONOTONICITY_IDENTITY,
    BoundId::CAUCHY_SCHWARZ,    BoundId::FIRST_LOWER,     BoundId::BETA_LOG_LOWER,
    BoundId::REFINED_LOWER,     BoundId::V_QUADRATIC_LOWER, BoundId::V_LOG_LOWER,
    BoundId::SUP_RATIO,         BoundId::UPPER_BRANCH_HEIGHT, BoundId::UPPER_BRANCH_RADIUS,
    BoundId::R_STAR_WINDOW,     BoundId::DEPTH_BOUND,     BoundId::SLOPE_LIMIT,
};

const char* bound_name(BoundId id);
// Inverse of bound_name; throws DomainError on unknown names.
BoundId bound_from_name(const std::string& name);

// Verification record of one inequality. min_margin is signed, favorable side
// positive; pass means min_margin >= -tolerance. A nonempty note explains a
// check that could not run or ran on a restricted grid.
struct BoundReport {
  BoundId bound = BoundId::PHI_ENVELOPE;
  double r_lo = 0.0, r_hi = 0.0;
  int grid_size = 0;
  double min_margin = 0.0;
  double worst_r = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

// alpha_n = 1 - 1/sqrt(2(n-1)), the coefficient of the first lower bound.
double alpha_coefficient(int n);

// Check one inequality on a graph of the branch beyond the turning point.
// turn_r and turn_V are the turning point (R*, V(R*)); for a self-contained
// graph pass g.r_lo() and g.V.front(). Grid radii are uniform on the
// intersection of [r_lo, r_hi] with the graph extent. Integral terms are
// resolved to quad_tol.
BoundReport check_bound(const GraphProfile& g, double turn_r, double turn_V, BoundId id,
                        double r_lo, double r_hi, int grid, double quad_tol);

// Wing-level entry point; handles every BoundId. Graph-level ids run on the
// lower branch beyond the turning point with the wing's exact turning data.
BoundReport check_bound(const WingSolution& w, BoundId id, double r_lo, double r_hi,
                        int grid, double quad_tol);

// One report per canonical BoundId in enumeration order. Per-id errors are
// folded into failed reports instead of aborting the batch.
std::vector<BoundReport> check_all(const WingSolution& w, double r_max, double quad_tol,
                                   int grid = 512);

} // namespace tsol
