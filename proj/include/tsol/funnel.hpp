#pragma once

#include "tsol/bounds.hpp"
#include "tsol/profile_ode.hpp"

#include <utility>
#include <vector>

namespace tsol {

// Solid parabolic funnel region between two parabolic walls,
//   f_+(r) = r^2/(2(n-1)) + 1
//   f_-(r) = (r-R0-2)^2/(2(n-1)) - lambda/2 log(1+(r-R0-2)^2) - c(R0, n)
// with c(R0, n) = (pi (R0 + pi/2) + 4)/(2(n-1)), over radii r >= R0. The
// center y0 shifts the whole region; walls are evaluated in the funnel's own
// frame. lambda >= 0 is accepted; each operation states the range it needs.
struct Funnel {
  int n = 2;
  double R0 = 1.0;
  double lambda = 1.0;
  std::vector<double> y0_horizontal; // offset in R^n; empty means origin
  double y0_vertical = 0.0;

  double upper_wall(double r) const; // own frame, any r
  double lower_wall(double r) const;
  double lower_wall_slope(double r) const;
};

// (f_-(r), f_+(r)) in the funnel's own frame. Throws DomainError for r < R0.
std::pair<double, double> funnel_walls(const Funnel& f, double r);

// Closed-set membership of a point in R^{n+1} (n horizontal coordinates, one
// vertical). Boundary points are contained.
bool funnel_contains(const Funnel& f, const std::vector<double>& point);
// Signed audit margin: >= 0 exactly when contained. Inside the aperture hole
// it is |p| - R0; otherwise the smaller of the two wall clearances.
double funnel_margin(const Funnel& f, const std::vector<double>& point);

// Location and value of the global minimum of f_- over the funnel radii.
struct WallMinimum {
  double r_min = 0.0;
  double value = 0.0;
};
WallMinimum lower_wall_minimum(const Funnel& f);

// Wall sandwich f_- <= V <= f_+ along both branches of the wing for
// r in [w.R, r_max], against the funnel of aperture w.R centered at the
// origin. Checks every computed sample plus a uniform refinement grid.
// Requires lambda in [0, 1] and r_max within both branch extents.
BoundReport verify_wing_containment(const WingSolution& w, double lambda,
                                    double r_max, int grid = 512);

// Box certified (by sampled wall comparison plus a tail audit) to contain
// every set difference funnel(R) minus funnel(R0) for R in [0, R0]: r_max is
// the largest radius where a smaller funnel's lower wall still dips under the
// reference wall, V_min / V_max bound the wall heights out to r_max.
struct BoundingBox {
  double r_max = 0.0;
  double V_min = 0.0;
  double V_max = 0.0;
};
BoundingBox excess_region_bound(int n, double lambda, double R0);

// Funnel of aperture rho lifted so every point clears height h0 and radius
// rho: vertical offset h0 - min f_- + 1. Audited by sampling 10^4 points.
Funnel funnel_avoiding_half_cylinder(int n, double rho, double h0,
                                     double lambda);

} // namespace tsol
