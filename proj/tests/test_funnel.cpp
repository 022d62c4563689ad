#include <doctest.h>

#include "tsol/funnel.hpp"
#include "tsol/profile_ode.hpp"

#include <cmath>

using namespace tsol;

namespace {

double wall_constant(int n, double R0) {
  return (M_PI * (R0 + M_PI / 2) + 4.0) / (2.0 * (n - 1));
}

} // namespace

TEST_CASE("wall formulas at hand-computed points") {
  Funnel f;
  f.n = 2;
  f.R0 = 2.0;
  f.lambda = 1.0;
  CHECK(f.upper_wall(2.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(f.upper_wall(4.0) == doctest::Approx(9.0).epsilon(1e-15));
  // at r = R0 the shifted parabola contributes (R0-R0-2)^2/2 = 2
  const double expected = 2.0 - 0.5 * std::log(5.0) - wall_constant(2, 2.0);
  CHECK(f.lower_wall(2.0) == doctest::Approx(expected).epsilon(1e-14));
  // wall gap is positive over a wide range
  for (double r = 2.0; r < 40.0; r += 0.5) {
    auto [lo, hi] = funnel_walls(f, r);
    CHECK(lo < hi);
  }
  CHECK_THROWS_AS(funnel_walls(f, 1.0), DomainError);
}

TEST_CASE("membership distinguishes hole, walls, and interior") {
  Funnel f;
  f.n = 2;
  f.R0 = 2.0;
  f.lambda = 1.0;
  // inside the aperture hole
  CHECK_FALSE(funnel_contains(f, {1.0, 0.0, 0.0}));
  CHECK(funnel_margin(f, {1.0, 0.0, 0.0}) == doctest::Approx(-1.0).epsilon(1e-12));
  // between the walls at radius 3
  const double mid = 0.5 * (f.lower_wall(3.0) + f.upper_wall(3.0));
  CHECK(funnel_contains(f, {3.0, 0.0, mid}));
  CHECK(funnel_margin(f, {3.0, 0.0, mid}) > 0.0);
  // above the upper wall
  CHECK_FALSE(funnel_contains(f, {3.0, 0.0, f.upper_wall(3.0) + 0.1}));
  // boundary counts as contained
  CHECK(funnel_contains(f, {3.0, 0.0, f.upper_wall(3.0)}));
  // horizontal coordinates enter only through the radius
  const double c = 3.0 / std::sqrt(2.0);
  CHECK(funnel_contains(f, {c, c, mid}));
}

TEST_CASE("center offset shifts the region rigidly") {
  Funnel f;
  f.n = 2;
  f.R0 = 2.0;
  f.lambda = 1.0;
  Funnel g = f;
  g.y0_horizontal = {10.0, 0.0};
  g.y0_vertical = -4.0;
  const double mid = 0.5 * (f.lower_wall(3.0) + f.upper_wall(3.0));
  CHECK(funnel_contains(f, {3.0, 0.0, mid}));
  CHECK(funnel_contains(g, {13.0, 0.0, mid - 4.0}));
  // below the shifted lower wall, and inside the shifted hole
  CHECK_FALSE(funnel_contains(g, {13.0, 0.0, f.lower_wall(3.0) - 5.0}));
  CHECK_FALSE(funnel_contains(g, {11.0, 0.0, mid - 4.0}));
}

TEST_CASE("lower wall minimum location follows the closed form") {
  // stationarity of (r-R0-2)^2/2k - (lambda/2) log(1+(r-R0-2)^2) gives
  // u^2 = lambda (n-1) - 1 at the minimum, u = r - R0 - 2
  for (auto [n, lambda] : {std::pair{2, 1.0}, {3, 1.0}, {2, 0.5}, {4, 0.25}}) {
    Funnel f;
    f.n = n;
    f.R0 = 2.0;
    f.lambda = lambda;
    WallMinimum m = lower_wall_minimum(f);
    const double u = std::sqrt(std::max(lambda * (n - 1) - 1.0, 0.0));
    CHECK(m.r_min == doctest::Approx(f.R0 + 2.0 + u).epsilon(1e-9));
    CHECK(m.value == doctest::Approx(f.lower_wall(m.r_min)).epsilon(1e-12));
    // spot check minimality on a coarse grid
    for (double r = f.R0; r < f.R0 + 20.0; r += 0.25) {
      CHECK(f.lower_wall(r) >= m.value - 1e-12);
    }
  }
}

TEST_CASE("wing stays sandwiched between its funnel walls") {
  SolverConfig cfg;
  cfg.r_max = 52.0;
  WingSolution w = solve_wing(2, 1.0, cfg);
  for (double lambda : {0.0, 1.0}) {
    BoundReport rep = verify_wing_containment(w, lambda, 50.0);
    CHECK(rep.pass);
    CHECK(rep.min_margin > 0.0);
    CHECK(rep.bound == BoundId::FUNNEL_CONTAINMENT);
  }
  CHECK_THROWS_AS(verify_wing_containment(w, 1.5, 50.0), DomainError);
  CHECK_THROWS_AS(verify_wing_containment(w, 1.0, 500.0), DomainError);
}

TEST_CASE("family excess region box") {
  BoundingBox bb = excess_region_bound(2, 1.0, 2.0);
  // the box is anchored at the deepest wall value and capped by the upper wall
  CHECK(bb.V_min == doctest::Approx(-wall_constant(2, 2.0)).epsilon(1e-12));
  CHECK(bb.r_max >= 2.0);
  Funnel ref;
  ref.n = 2;
  ref.R0 = 2.0;
  ref.lambda = 1.0;
  CHECK(bb.V_max >= ref.upper_wall(bb.r_max) - 1e-12);
  // frozen values from the certified scan
  CHECK(bb.r_max == doctest::Approx(2.0104390904679894).epsilon(1e-10));
  CHECK(bb.V_max == doctest::Approx(3.0209326682408784).epsilon(1e-10));

  // every smaller-aperture lower wall within the scanned radii stays inside
  for (double R = 0.25; R < 2.0; R += 0.25) {
    Funnel small;
    small.n = 2;
    small.R0 = R;
    small.lambda = 1.0;
    for (double r = R; r <= bb.r_max; r += 0.01) {
      CHECK(small.lower_wall(r) >= bb.V_min - 1e-12);
      CHECK(small.lower_wall(r) <= bb.V_max + 1e-12);
    }
  }
}

TEST_CASE("lifted funnel clears a half cylinder") {
  const int n = 3;
  const double rho = 3.0, h0 = 5.0, lambda = 0.5;
  Funnel f = funnel_avoiding_half_cylinder(n, rho, h0, lambda);
  CHECK(f.R0 == rho);
  CHECK(f.lambda == lambda);
  // construction promises min wall height h0 + 1
  Funnel base = f;
  base.y0_vertical = 0.0;
  WallMinimum m = lower_wall_minimum(base);
  CHECK(f.y0_vertical == doctest::Approx(h0 - m.value + 1.0).epsilon(1e-12));
  // frozen value for the demo parameters
  CHECK(f.y0_vertical == doctest::Approx(10.589895040328514).epsilon(1e-10));
  // sampled clearance: every funnel point has radius >= rho or height > h0
  for (double r = rho; r < rho + 30.0; r += 0.05) {
    CHECK(f.lower_wall(r) + f.y0_vertical > h0);
  }
}
