#include "tsol/funnel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsol {

namespace {

double vertical_offset_constant(int n, double R0) {
  const double pi = 3.14159265358979323846;
  return (pi * (R0 + pi / 2) + 4.0) / (2.0 * (n - 1));
}

} // namespace

double Funnel::upper_wall(double r) const { return r * r / (2.0 * (n - 1)) + 1.0; }

double Funnel::lower_wall(double r) const {
  const double s = r - R0 - 2.0;
  return s * s / (2.0 * (n - 1)) - 0.5 * lambda * std::log1p(s * s) -
         vertical_offset_constant(n, R0);
}

double Funnel::lower_wall_slope(double r) const {
  const double s = r - R0 - 2.0;
  return s / (n - 1) - lambda * s / (1.0 + s * s);
}

std::pair<double, double> funnel_walls(const Funnel& f, double r) {
  if (!(r >= f.R0)) throw DomainError("funnel_walls: radius below the aperture");
  return {f.lower_wall(r), f.upper_wall(r)};
}

double funnel_margin(const Funnel& f, const std::vector<double>& point) {
  if (point.size() != static_cast<size_t>(f.n) + 1)
    throw DomainError("funnel point must have n+1 coordinates");
  double rho2 = 0.0;
  for (int i = 0; i < f.n; ++i) {
    double d = point[i];
    if (i < static_cast<int>(f.y0_horizontal.size())) d -= f.y0_horizontal[i];
    rho2 += d * d;
  }
  const double r = std::sqrt(rho2);
  const double x = point[f.n] - f.y0_vertical;
  if (r < f.R0) return r - f.R0;
  return std::min(x - f.lower_wall(r), f.upper_wall(r) - x);
}

bool funnel_contains(const Funnel& f, const std::vector<double>& point) {
  return funnel_margin(f, point) >= 0.0;
}

WallMinimum lower_wall_minimum(const Funnel& f) {
  // f_-'(s) = s (1+s^2 - lambda(n-1)) / ((n-1)(1+s^2)) in s = r-R0-2, so on
  // s >= -2 the minimum sits at s = 0, or at s = sqrt(lambda(n-1)-1) when
  // that is real and positive.
  double s = 0.0;
  const double disc = f.lambda * (f.n - 1) - 1.0;
  if (disc > 0.0) s = std::sqrt(disc);
  WallMinimum m;
  m.r_min = f.R0 + 2.0 + s;
  m.value = f.lower_wall(m.r_min);
  return m;
}

namespace {

// Worst sandwich margin of one branch over [r_lo, r_hi]: checks every stored
// sample in range and a uniform dense-output refinement.
void branch_margin(const ProfileCurve& c, const Funnel& f, double r_lo, double r_hi,
                   int grid, double& min_margin, double& worst_r, int& points) {
  auto consider = [&](double r, double V) {
    const double m = std::min(V - f.lower_wall(r), f.upper_wall(r) - V);
    ++points;
    if (m < min_margin) {
      min_margin = m;
      worst_r = r;
    }
  };
  for (size_t i = 0; i < c.size(); ++i)
    if (c.r[i] >= r_lo && c.r[i] <= r_hi) consider(c.r[i], c.V[i]);
  // Uniform refinement in arc length between the endpoints of the range.
  double s_lo = c.s_front(), s_hi = c.s_back();
  for (int k = 0; k < grid; ++k) {
    const double s = s_lo + (s_hi - s_lo) * (k + 0.5) / grid;
    const auto y = c.at(s);
    if (y[0] >= r_lo && y[0] <= r_hi) consider(y[0], y[1]);
  }
}

} // namespace

BoundReport verify_wing_containment(const WingSolution& w, double lambda,
                                    double r_max, int grid) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw DomainError("containment check requires lambda in [0, 1]");
  if (r_max > w.lower.r_extent() || r_max > w.upper.r_extent())
    throw DomainError("containment range exceeds the computed curve extent");
  Funnel f;
  f.n = w.n;
  f.R0 = w.R;
  f.lambda = lambda;

  BoundReport rep;
  rep.bound = BoundId::FUNNEL_CONTAINMENT;
  rep.r_lo = w.R;
  rep.r_hi = r_max;
  rep.tolerance = 0.0;
  rep.min_margin = std::numeric_limits<double>::infinity();
  int points = 0;
  branch_margin(w.lower, f, w.R, r_max, grid, rep.min_margin, rep.worst_r, points);
  branch_margin(w.upper, f, w.R, r_max, grid, rep.min_margin, rep.worst_r, points);
  rep.grid_size = points;
  rep.pass = rep.min_margin >= -rep.tolerance;
  return rep;
}

BoundingBox excess_region_bound(int n, double lambda, double R0) {
  if (!(R0 > 0.0)) throw DomainError("excess bound requires a positive aperture");
  Funnel ref;
  ref.n = n;
  ref.R0 = R0;
  ref.lambda = lambda;

  const int R_grid = 65;
  const double hard_cap = 1e6;
  BoundingBox box;
  box.r_max = R0; // aperture-hole excess alone reaches out to R0
  box.V_min = lower_wall_minimum(ref).value;
  box.V_max = ref.upper_wall(R0);

  for (int i = 0; i < R_grid; ++i) {
    const double R = R0 * i / (R_grid - 1);
    if (R == R0) continue; // empty excess
    Funnel g;
    g.n = n;
    g.R0 = R;
    g.lambda = lambda;
    auto D = [&](double r) { return g.lower_wall(r) - ref.lower_wall(r); };

    // Last radius where the smaller funnel's wall dips under the reference.
    // Beyond r = R0 + 3 both shift arguments exceed 1, the per-wall slope
    // s/(n-1) - lambda s/(1+s^2) is increasing there, and D is strictly
    // increasing; a fine scan up to that point plus a monotone march beyond
    // it brackets the final sign change.
    const double r_lin = R0 + 3.0;
    double last_lo = 0.0, last_hi = 0.0;
    bool found = false;
    double r_prev = R0;
    double D_prev = D(r_prev);
    const int fine = 600;
    for (int k = 1; k <= fine; ++k) {
      const double r = R0 + (r_lin - R0) * k / fine;
      const double D_here = D(r);
      if ((D_prev < 0.0) != (D_here < 0.0)) {
        last_lo = r_prev;
        last_hi = r;
        found = true;
      }
      r_prev = r;
      D_prev = D_here;
    }
    if (D_prev < 0.0) {
      double r = r_lin;
      double value = D_prev;
      while (value < 0.0) {
        r_prev = r;
        r += 1.0;
        if (r > R0 + hard_cap)
          throw std::runtime_error("excess crossing not bracketed below the hard cap");
        value = D(r);
      }
      last_lo = r_prev;
      last_hi = r;
      found = true;
    }
    double crossing = R0;
    if (found) {
      double lo = last_lo, hi = last_hi;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if ((D(lo) < 0.0) == (D(mid) < 0.0))
          lo = mid;
        else
          hi = mid;
      }
      crossing = 0.5 * (lo + hi);
    }

    // Tail audit: no dip beyond the crossing.
    for (int k = 1; k <= 1000; ++k) {
      const double r = crossing + k * 0.1;
      if (D(r) < -1e-9)
        throw std::runtime_error("wall nesting violated beyond the crossing radius");
    }

    box.r_max = std::max(box.r_max, crossing);
    box.V_min = std::min(box.V_min, lower_wall_minimum(g).value);
  }
  box.V_max = ref.upper_wall(box.r_max);
  return box;
}

Funnel funnel_avoiding_half_cylinder(int n, double rho, double h0, double lambda) {
  if (!(rho > 0.0)) throw DomainError("cylinder radius must be positive");
  Funnel f;
  f.n = n;
  f.R0 = rho;
  f.lambda = lambda;
  f.y0_horizontal.assign(static_cast<size_t>(n), 0.0);
  f.y0_vertical = h0 - lower_wall_minimum(f).value + 1.0;

  // Audit: 10^4 sampled funnel points clear the cylinder wall and the base.
  const int N_r = 100, N_h = 100;
  for (int i = 0; i < N_r; ++i) {
    const double r = rho + 40.0 * i / (N_r - 1);
    const double lo = f.lower_wall(r), hi = f.upper_wall(r);
    for (int j = 0; j < N_h; ++j) {
      const double x = lo + (hi - lo) * j / (N_h - 1) + f.y0_vertical;
      if (!(r >= rho) || !(x > h0))
        throw std::runtime_error("funnel placement audit failed");
    }
  }
  return f;
}

} // namespace tsol
