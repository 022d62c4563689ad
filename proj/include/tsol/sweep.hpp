#pragma once

#include "tsol/profile_ode.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace tsol {

// Rotationally symmetric test hypersurface, given by its meridian polyline in
// the (r, x) half-plane, r >= 0 at every vertex.
struct ObstacleProfile {
  std::vector<double> r;
  std::vector<double> x;

  size_t size() const { return r.size(); }
  void validate() const; // throws DomainError on r < 0, size mismatch, empty
};

// CSV polyline "r,x", one vertex per line, optional header.
ObstacleProfile read_obstacle_csv(std::istream& in);
ObstacleProfile obstacle_from_curve(const ProfileCurve& curve, double spacing);

// Crossings and near-touches (within tol) of two polylines. overlapping is
// set when the curves share a whole arc rather than isolated points.
struct IntersectionSet {
  bool overlapping = false;
  std::vector<std::array<double, 2>> points;
};
IntersectionSet intersect(const ObstacleProfile& a, const ObstacleProfile& b,
                          double tol);

// Whether the obstacle polyline meets the wing's meridian curve, within
// geometric tolerance tol_geom. On true, touch receives a point of contact.
bool wing_intersects(const WingSolution& w, const ObstacleProfile& obstacle,
                     double tol_geom, std::array<double, 2>* touch = nullptr);
// Same predicate against the bowl graph (the R = 0 member of the family).
bool bowl_intersects(const GraphProfile& bowl, const ObstacleProfile& obstacle,
                     double tol_geom, std::array<double, 2>* touch = nullptr);

struct SweepResult {
  bool critical_found = false;   // false: obstacle misses the whole family
  double critical_value = 0.0;   // R-tilde or s-tilde when found
  bool touch_found = false;
  double touch_r = 0.0;
  double touch_x = 0.0;
  int iterations = 0;            // predicate evaluations performed
  std::string case_note;         // which case of the sweep applied
};

// Shrink the neck radius from R0 until the family member last meets the
// obstacle: critical_value = sup{R <= R0 : member meets obstacle}, located by
// a downward grid scan (grid_size values) refined by bisection to tol.
// Requires the obstacle to miss the starting member at R0; throws
// DomainError otherwise (hypothesis violation).
SweepResult sweep_aperture(const ObstacleProfile& obstacle, int n, double R0,
                           double tol, int grid_size = 64);

// Translate the bowl graph vertically until first touch. sign = -1: obstacle
// strictly below the graph, translates move down, critical_value = inf of the
// touching shifts; sign = +1 the mirror case above. Monotone predicate,
// plain bisection. Throws DomainError when the obstacle starts on the wrong
// side.
SweepResult sweep_translate(const ObstacleProfile& obstacle, int n, int sign,
                            double tol);

} // namespace tsol
