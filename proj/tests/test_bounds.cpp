#include <doctest.h>

#include "tsol/bounds.hpp"
#include "tsol/profile_ode.hpp"

#include <cmath>
#include <set>
#include <string>

using namespace tsol;

TEST_CASE("alpha coefficient closed form") {
  CHECK(alpha_coefficient(2) == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(alpha_coefficient(5) == doctest::Approx(1.0 - 1.0 / std::sqrt(8.0)).epsilon(1e-15));
}

TEST_CASE("bound names round trip and stay distinct") {
  std::set<std::string> seen;
  for (BoundId id : all_bound_ids) {
    std::string name = bound_name(id);
    CHECK(seen.insert(name).second);
    CHECK(bound_from_name(name) == id);
  }
  CHECK(bound_from_name(bound_name(BoundId::FUNNEL_CONTAINMENT)) == BoundId::FUNNEL_CONTAINMENT);
  CHECK_THROWS_AS(bound_from_name("NOT_A_BOUND"), DomainError);
}

TEST_CASE("canonical suite passes on a representative wing") {
  SolverConfig cfg;
  cfg.r_max = 62.0;
  WingSolution w = solve_wing(2, 1.0, cfg);
  auto reports = check_all(w, 60.0, 1e-8);
  REQUIRE(reports.size() == all_bound_ids.size());
  for (size_t i = 0; i < reports.size(); ++i) {
    INFO("bound ", bound_name(reports[i].bound));
    CHECK(reports[i].bound == all_bound_ids[i]);
    CHECK(reports[i].pass);
    CHECK(reports[i].min_margin >= -1e-7);
    CHECK(reports[i].grid_size > 0);
  }
}

TEST_CASE("envelope and first lower bound hold pointwise") {
  SolverConfig cfg;
  cfg.r_max = 42.0;
  WingSolution w = solve_wing(3, 0.5, cfg);
  GraphProfile g = graph_view(w.lower, w.R_star);
  const double a3 = alpha_coefficient(3);
  // the graph grid starts at the first sample past the turning point
  for (double r = g.r_lo() + 0.01; r < 40.0; r += 0.37) {
    const double phi = g.phi_at(r);
    CHECK(phi >= 0.0);
    CHECK(phi <= r / 2.0 + 1e-12);
    CHECK(phi >= a3 * (r - w.R_star) / 2.0 - 1e-12);
  }
}

TEST_CASE("slope ratio cap is attained-side tight at zero turning radius") {
  // sup r/(1+phi^2) <= R* + (n-1)/(2 alpha_n); exact for the comparison
  // envelope at R* = 0, so real margins stay strictly positive
  SolverConfig cfg;
  cfg.r_max = 62.0;
  for (double R : {0.5, 2.0}) {
    WingSolution w = solve_wing(5, R, cfg);
    BoundReport rep = check_bound(w, BoundId::SUP_RATIO, w.R_star, 60.0, 1024, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.min_margin >= 0.0);
    CHECK(rep.min_margin < w.R_star + 4.0 / (2.0 * alpha_coefficient(5)));
  }
}

TEST_CASE("turning window and depth come out as reported") {
  SolverConfig cfg;
  cfg.r_max = 10.0;
  WingSolution w = solve_wing(2, 1.0, cfg);
  BoundReport win = check_bound(w, BoundId::R_STAR_WINDOW, w.R, 10.0, 8, 1e-8);
  CHECK(win.pass);
  CHECK(win.min_margin == doctest::Approx(w.R + M_PI / 2 - w.R_star).epsilon(1e-12));
  BoundReport dep = check_bound(w, BoundId::DEPTH_BOUND, w.R, 10.0, 8, 1e-8);
  CHECK(dep.pass);
  CHECK(dep.min_margin ==
        doctest::Approx((M_PI / 2) * w.R_star / (w.n - 1) - w.depth).epsilon(1e-12));
}

TEST_CASE("integral identity residual tracks the quadrature tolerance") {
  SolverConfig cfg;
  cfg.r_max = 102.0;
  WingSolution w = solve_wing(2, 1.0, cfg);
  double res[3];
  const double qts[3] = {1e-6, 1e-5, 1e-4};
  for (int i = 0; i < 3; ++i) {
    BoundReport rep =
        check_bound(w, BoundId::MONOTONICITY_IDENTITY, w.R_star, 100.0, 512, qts[i]);
    CHECK(rep.pass);
    res[i] = -rep.min_margin;
    CHECK(res[i] >= 0.0);
    CHECK(res[i] <= 100.0 * qts[i]);
  }
  // two-decade slope of residual against tolerance is close to linear
  const double slope = std::log10(res[2] / res[0]) / 2.0;
  CHECK(slope > 0.7);
  CHECK(slope < 1.3);
}

TEST_CASE("restricted-domain bounds record their grids") {
  SolverConfig cfg;
  cfg.r_max = 62.0;
  WingSolution w = solve_wing(2, 2.0, cfg);
  // the refined bound only applies beyond max(R*, 1)
  BoundReport rep = check_bound(w, BoundId::REFINED_LOWER, w.R_star, 60.0, 256, 1e-8);
  CHECK(rep.pass);
  CHECK(rep.r_lo >= 1.0);
  // the far-field slope pinch needs r >= 10 R*
  BoundReport far = check_bound(w, BoundId::SLOPE_LIMIT, w.R_star, 60.0, 256, 1e-8);
  CHECK(far.pass);
  CHECK(far.r_lo >= 10.0 * w.R_star - 1e-9);
}

TEST_CASE("upper branch height and radius controls") {
  SolverConfig cfg;
  cfg.r_max = 42.0;
  WingSolution w = solve_wing(4, 1.0, cfg);
  BoundReport h = check_bound(w, BoundId::UPPER_BRANCH_HEIGHT, w.R, 40.0, 256, 1e-8);
  CHECK(h.pass);
  BoundReport r = check_bound(w, BoundId::UPPER_BRANCH_RADIUS, w.R, 40.0, 256, 1e-8);
  CHECK(r.pass);
  // direct spot check of the height form V <= (r^2 - R^2)/(2(n-1)) + 1
  GraphProfile g = graph_view(w.upper, w.R + 1e-12 * (1.0 + w.R));
  for (double rr = 2.0; rr < 40.0; rr += 1.7) {
    CHECK(g.V_at(rr) <= (rr * rr - 1.0) / 6.0 + 1.0 + 1e-9);
  }
}

TEST_CASE("batch checking survives a failing case") {
  // a wing whose graph stops short of the requested window still yields a
  // report per bound, with failures folded in rather than thrown
  SolverConfig cfg;
  cfg.r_max = 8.0;
  WingSolution w = solve_wing(2, 1.0, cfg);
  auto reports = check_all(w, 300.0, 1e-8);
  CHECK(reports.size() == all_bound_ids.size());
  bool any_addressed = true;
  for (const auto& rep : reports) any_addressed = any_addressed && (rep.pass || !rep.note.empty());
  CHECK(any_addressed);
}
