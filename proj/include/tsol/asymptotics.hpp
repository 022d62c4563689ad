#pragma once

#include "tsol/profile_ode.hpp"

#include <stdexcept>
#include <vector>

namespace tsol {

// Height of either end grows like r^2/(2(n-1)) - log r + C + O(1/r). The fit
// estimates C and the first-order remainder coefficient K from profile data.
struct FitError : std::runtime_error {
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

struct AsymptoticFit {
  double C = 0.0;            // additive constant estimate
  double K = 0.0;            // coefficient of the 1/r remainder
  double slope = 0.0;        // log-log decay exponent of |C_est - C|
  double window_lo = 0.0;
  double window_hi = 0.0;
  int nodes = 0;
  double max_residual = 0.0; // max |C_est(r) - C - K/r| over the nodes
  bool model_mismatch = false;
};

// Least-squares fit of C_est(r) = V(r) - r^2/(2(n-1)) + log r against C + K/r
// on given samples restricted to [window_lo, window_hi]. Requires at least 16
// in-window samples and window_hi >= 2 * window_lo > 0.
AsymptoticFit fit_height_model(int n, const std::vector<double>& r,
                               const std::vector<double>& V, double window_lo,
                               double window_hi);

// Same fit on uniform nodes drawn from a graph profile's dense output.
AsymptoticFit estimate_constant(const GraphProfile& g, double window_lo,
                                double window_hi, int nodes = 64);

// C_est sample pairs for plotting, uniform nodes over the window.
std::vector<std::pair<double, double>> constant_samples(const GraphProfile& g,
                                                        double window_lo,
                                                        double window_hi,
                                                        int nodes = 64);

// Constants of both ends of a wing and their separation. Enforces the
// near-turning exclusion window_lo >= 10 (R* + 1); both branches must reach
// window_hi. The lower-branch constant uses heights with V(R*) = -depth, the
// convention of solve_wing.
struct EndSeparation {
  AsymptoticFit plus;  // upper branch
  AsymptoticFit minus; // lower branch
  double delta = 0.0;  // plus.C - minus.C
};
EndSeparation end_separation(const WingSolution& w, double window_lo,
                             double window_hi, int nodes = 64);

} // namespace tsol
