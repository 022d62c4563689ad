#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsol {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& msg, double s, double r, double V, double alpha)
      : std::runtime_error(msg), last_s(s), last_r(r), last_V(V), last_alpha(alpha) {}
  double last_s, last_r, last_V, last_alpha;
};

struct SolverConfig {
  double tol = 1e-10;      // local error tolerance, absolute and relative
  double r_max = 100.0;    // integrate until the radius reaches this value
  double eps_start = 1e-6; // axis offset for the bowl series start
  double step_init = 1e-3;
  double step_max = 10.0;
  bool fixed_step = false; // constant step_init, no error control (order studies)
  double s_end = 0.0;      // if > 0, stop at this arc length instead of r_max
  std::size_t max_steps = 2000000;

  void validate() const;
};

// Meridian curve of a rotationally symmetric translator, parametrized by arc
// length. alpha is the tangent angle in the (r, V) plane:
//   r' = cos(alpha), V' = sin(alpha), alpha' = cos(alpha) - (n-1) sin(alpha)/r.
// d* hold the right-hand side at each sample, which makes every accepted step
// a cubic Hermite segment (the dense output used throughout).
struct ProfileCurve {
  int n = 2;
  std::vector<double> s, r, V, alpha;
  std::vector<double> dr, dV, dalpha;

  std::size_t size() const { return s.size(); }
  double s_front() const { return s.front(); }
  double s_back() const { return s.back(); }

  // Dense-output state (r, V, alpha) at arc length ss, s_front() <= ss <= s_back().
  std::array<double, 3> at(double ss) const;

  // Largest sample radius.
  double r_extent() const;
};

// Graph reparametrization V(r) on a strictly increasing radius grid.
// phi = tan(alpha) = dV/dr. Evaluation between nodes is cubic Hermite; V uses
// the exact slope phi, phi uses the exact slope from the profile equation.
struct GraphProfile {
  int n = 2;
  std::vector<double> r_grid, V, phi;

  double r_lo() const { return r_grid.front(); }
  double r_hi() const { return r_grid.back(); }
  double V_at(double r) const;
  double phi_at(double r) const;
  double dphi_at(double r) const; // from the graph ODE, not differencing
};

// Winglike solution: both meridian halves leave the waist (R, 0) with vertical
// tangent. lower dips to the turning point (R_star, -depth) where alpha = 0,
// upper rises directly. Both are parametrized from the waist, s >= 0.
struct WingSolution {
  int n = 2;
  double R = 1.0;
  ProfileCurve lower, upper;
  double R_star = 0.0;
  double depth = 0.0;
  double s_turn = 0.0; // arc length of the turning point on the lower branch

  // Single curve traversing the full hairpin: the upper branch reversed
  // (alpha shifted by -pi, s <= 0) glued to the lower branch (s >= 0).
  // The combined curve satisfies the same profile equation.
  ProfileCurve meridian() const;
};

// Right-hand side of the arc-length system; requires n >= 2 and r > 0.
std::array<double, 3> translator_rhs(int n, double r, double V, double alpha);

// Bowl solution started on the axis with the series V = r^2/(2n) + O(r^4),
// phi = r/n + O(r^3), evaluated at r = eps_start.
ProfileCurve solve_bowl(int n, const SolverConfig& cfg);

// Winglike solution with waist radius R > 0. R = 0 is rejected; the bowl is a
// separate construction, not the R -> 0 limit of this routine.
WingSolution solve_wing(int n, double R, const SolverConfig& cfg);

// Graph view of the samples with radius >= r_lo. Fails if the restricted
// samples are not strictly increasing in radius or contain a vertical tangent.
GraphProfile graph_view(const ProfileCurve& c, double r_lo);

// Sup of the finite-difference defect of all three equations over interior
// samples, using five-point stencils on the accepted-step grid.
double translator_residual(const ProfileCurve& c);

} // namespace tsol
