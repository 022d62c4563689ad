// End-to-end acceptance run. Each criterion prints one PASS or FAIL line;
// the process exits 0 only when every criterion passes. Reference values
// come from a local fixed-step integrator that shares no code with the
// library solver.

#include "tsol/asymptotics.hpp"
#include "tsol/bounds.hpp"
#include "tsol/funnel.hpp"
#include "tsol/io.hpp"
#include "tsol/profile_ode.hpp"
#include "tsol/subsolution.hpp"
#include "tsol/sweep.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace tsol;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// Classical fourth-order Runge-Kutta on the arc-length system, used as the
// independent reference throughout this binary.
struct RefState {
  double r, V, alpha;
};

std::array<double, 3> ref_rhs(int n, const RefState& y) {
  return {std::cos(y.alpha), std::sin(y.alpha),
          std::cos(y.alpha) - (n - 1) * std::sin(y.alpha) / y.r};
}

RefState ref_step(int n, const RefState& y, double h) {
  auto add = [](const RefState& a, const std::array<double, 3>& k, double c) {
    return RefState{a.r + c * k[0], a.V + c * k[1], a.alpha + c * k[2]};
  };
  const auto k1 = ref_rhs(n, y);
  const auto k2 = ref_rhs(n, add(y, k1, h / 2));
  const auto k3 = ref_rhs(n, add(y, k2, h / 2));
  const auto k4 = ref_rhs(n, add(y, k3, h));
  return RefState{y.r + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
                  y.V + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]),
                  y.alpha + h / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])};
}

RefState ref_integrate(int n, RefState y, double s_len, double h) {
  const long steps = std::lround(s_len / h);
  for (long i = 0; i < steps; ++i) y = ref_step(n, y, h);
  return y;
}

RefState bowl_axis_start(int n, double eps) {
  return RefState{eps, eps * eps / (2.0 * n), std::atan(eps / n)};
}

// Reference turning point of the wing with waist R: march the lower branch
// from the vertical start until the tangent turns horizontal, then bisect
// the crossing step.
void ref_turning_point(int n, double R, double& R_star, double& depth) {
  RefState y{R, 0.0, -1.5707963267948966};
  const double h = 1e-5;
  RefState prev = y;
  double s = 0.0;
  while (y.alpha < 0.0) {
    prev = y;
    y = ref_step(n, y, h);
    s += h;
    if (s > 10.0) break;
  }
  double lo = 0.0, hi = h;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ref_step(n, prev, mid).alpha < 0.0 ? lo : hi) = mid;
  }
  const RefState turn = ref_step(n, prev, 0.5 * (lo + hi));
  R_star = turn.r;
  depth = -turn.V;
}

// Reference bowl height at radius rr: march past it, then bisect the last
// step for the crossing state.
double ref_bowl_height(int n, double rr, double eps) {
  RefState y = bowl_axis_start(n, eps);
  const double h = 1e-5;
  RefState prev = y;
  while (y.r < rr) {
    prev = y;
    y = ref_step(n, y, h);
  }
  double lo = 0.0, hi = h;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ref_step(n, prev, mid).r < rr ? lo : hi) = mid;
  }
  return ref_step(n, prev, 0.5 * (lo + hi)).V;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// 1. Turning-point geometry across the family, with a time limit per solve.
bool criterion_wing_geometry(std::string& detail) {
  const double half_pi = 1.5707963267948966;
  double worst_slack = 1e9, worst_time = 0.0;
  for (int n : {2, 3, 5}) {
    for (double R : {0.5, 1.0, 2.0}) {
      SolverConfig cfg;
      cfg.r_max = R + 3.0;
      const auto t0 = clock_type::now();
      WingSolution w = solve_wing(n, R, cfg);
      const double dt = seconds_since(t0);
      worst_time = std::max(worst_time, dt);
      if (dt >= 1.0) {
        detail = "solve took " + fmt(dt) + " s";
        return false;
      }
      const double window_slack = R + half_pi + 1e-8 - w.R_star;
      const double depth_slack = half_pi * w.R_star / (n - 1) + 1e-8 - w.depth;
      worst_slack = std::min({worst_slack, window_slack, depth_slack});
      if (window_slack < 0.0 || depth_slack < 0.0) {
        detail = "bound violated at n=" + std::to_string(n) + " R=" + fmt(R);
        return false;
      }
    }
  }
  detail = "9 solves, max " + fmt(worst_time) + " s, min slack " + fmt(worst_slack);
  return true;
}

// 2. Containment of every grid member between the funnel walls.
bool criterion_containment(std::string& detail) {
  double min_margin = 1e9;
  for (int n : {2, 3, 5}) {
    for (double R : {0.5, 1.0, 2.0}) {
      SolverConfig cfg;
      cfg.r_max = 202.0;
      WingSolution w = solve_wing(n, R, cfg);
      for (double lambda : {0.0, 1.0}) {
        BoundReport rep = verify_wing_containment(w, lambda, 200.0);
        min_margin = std::min(min_margin, rep.min_margin);
        if (!rep.pass || !(rep.min_margin > 0.0)) {
          detail = "containment failed at n=" + std::to_string(n) + " R=" + fmt(R) +
                   " lambda=" + fmt(lambda) + " margin=" + fmt(rep.min_margin);
          return false;
        }
      }
    }
  }
  detail = "18 checks on r in [R, 200], min margin " + fmt(min_margin);
  return true;
}

// 3. Full inequality suite on the coarse grid, plus the residual budget and
// quadrature scaling of the integral identity.
bool criterion_bound_suite(std::string& detail) {
  double worst_margin = 1e9;
  int report_count = 0;
  for (int n : {2, 3, 4, 5}) {
    for (double R : {0.5, 2.0}) {
      SolverConfig cfg;
      cfg.r_max = 102.0;
      WingSolution w = solve_wing(n, R, cfg);
      std::vector<BoundReport> reports = check_all(w, 100.0, 1e-8);
      if (reports.size() != 15) {
        detail = "suite size " + std::to_string(reports.size());
        return false;
      }
      for (const BoundReport& rep : reports) {
        ++report_count;
        worst_margin = std::min(worst_margin, rep.min_margin);
        if (!rep.pass || rep.min_margin < -1e-7) {
          detail = std::string(bound_name(rep.bound)) + " failed at n=" +
                   std::to_string(n) + " R=" + fmt(R) + " margin=" + fmt(rep.min_margin);
          return false;
        }
        if (rep.bound == BoundId::MONOTONICITY_IDENTITY && -rep.min_margin > 1e-6) {
          detail = "identity residual " + fmt(-rep.min_margin) + " over budget";
          return false;
        }
      }
    }
  }

  // linear response of the identity residual to the quadrature tolerance
  SolverConfig cfg;
  cfg.r_max = 102.0;
  WingSolution w = solve_wing(2, 1.0, cfg);
  const double qts[3] = {1e-6, 1e-5, 1e-4};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double qt : qts) {
    BoundReport rep =
        check_bound(w, BoundId::MONOTONICITY_IDENTITY, w.R_star, 100.0, 512, qt);
    if (!rep.pass) {
      detail = "identity failed at quad_tol " + fmt(qt);
      return false;
    }
    const double x = std::log(qt), y = std::log(std::max(-rep.min_margin, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  if (slope < 0.7 || slope > 1.3) {
    detail = "identity residual scaling slope " + fmt(slope);
    return false;
  }
  detail = std::to_string(report_count) + " reports, worst margin " + fmt(worst_margin) +
           ", scaling slope " + fmt(slope);
  return true;
}

// 4. Exact sign certification of the derived polynomials on the ray.
bool criterion_lemmas(std::string& detail) {
  std::vector<int> n_main;
  for (int n = 5; n <= 10; ++n) n_main.push_back(n);
  std::vector<BigRational> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(make_rational(k, 2));
  LemmaReport main_report = verify_lemmas(n_main, grid);
  LemmaReport small_report = verify_lemmas({2, 3, 4}, {make_rational(2, 1)});
  if (!main_report.all_pass || !small_report.all_pass) {
    detail = "a grid case failed";
    return false;
  }

  const RationalPolynomial p = derive_polynomial(2, BigRational(0));
  const SignVerdict v = nonpositive_on_ray(p, BigRational(0));
  if (v.kind != SignVerdict::Kind::sign_change) {
    detail = "expected a sign change at the borderline case";
    return false;
  }
  const double lo = rational_to_double(v.bracket_lo);
  const double hi = rational_to_double(v.bracket_hi);
  const double root = std::sqrt((std::sqrt(13.0) - 1.0) / 6.0);
  if (hi - lo > 1e-9 || root < lo || root > hi) {
    detail = "bracket [" + fmt(lo) + ", " + fmt(hi) + "] misses the root";
    return false;
  }
  if (rational_sign(p.eval(v.bracket_lo)) * rational_sign(p.eval(v.bracket_hi)) >= 0) {
    detail = "bracket endpoints do not straddle the root";
    return false;
  }
  detail = std::to_string(main_report.cases.size() + small_report.cases.size()) +
           " exact cases, borderline bracket width " + fmt(hi - lo);
  return true;
}

// 5. Coefficient-table audit with a machine-readable discrepancy report.
bool criterion_table_audit(std::string& detail) {
  struct Case {
    int n;
    BigRational R_star;
    bool origin_should_match;
  };
  const Case cases[3] = {{2, BigRational(0), true},
                         {5, make_rational(1, 2), false},
                         {3, BigRational(2), false}};

  JsonValue report = JsonValue::array();
  for (const Case& c : cases) {
    const TableAudit origin = audit_printed_table(c.n, c.R_star, CoefficientBasis::origin);
    const TableAudit centered =
        audit_printed_table(c.n, c.R_star, CoefficientBasis::centered);
    const TableAudit shifted = audit_shifted_tables(c.n, c.R_star);

    for (const TableAudit* a : {&origin, &centered, &shifted}) {
      JsonValue rows = JsonValue::array();
      for (const CoefficientDiff& row : a->rows) {
        JsonValue r = JsonValue::object();
        r.set("k", JsonValue::integer(row.k));
        r.set("a", JsonValue::string(row.a));
        r.set("b", JsonValue::string(row.b));
        r.set("equal", JsonValue::boolean(row.equal));
        rows.push(std::move(r));
      }
      JsonValue j = JsonValue::object();
      j.set("n", JsonValue::integer(c.n));
      j.set("Rstar", JsonValue::string(rational_to_string(c.R_star)));
      j.set("a_label", JsonValue::string(a->a_label));
      j.set("b_label", JsonValue::string(a->b_label));
      j.set("identical", JsonValue::boolean(a->identical));
      j.set("proportional", JsonValue::boolean(a->proportional));
      j.set("factor", JsonValue::string(a->factor));
      j.set("rows", std::move(rows));
      report.push(std::move(j));
    }

    // the turning-point basis table is the derived polynomial on the nose
    if (!centered.identical || centered.factor != "1") {
      detail = "centered table mismatch at n=" + std::to_string(c.n);
      return false;
    }
    if (origin.proportional != c.origin_should_match ||
        shifted.proportional != c.origin_should_match) {
      detail = "origin table audit surprised us at n=" + std::to_string(c.n);
      return false;
    }
    if (origin.rows.size() != 9) {
      detail = "audit row count " + std::to_string(origin.rows.size());
      return false;
    }

    // the sign certificates never depend on the printed tables
    const SignVerdict v =
        nonpositive_on_ray(derive_polynomial(c.n, c.R_star), c.R_star);
    const bool want_nonpositive = !(c.n == 2 && rational_sign(c.R_star) == 0);
    const bool is_nonpositive = v.kind == SignVerdict::Kind::nonpositive_on_ray;
    if (want_nonpositive != is_nonpositive) {
      detail = "derived verdict changed at n=" + std::to_string(c.n);
      return false;
    }
  }

  std::ofstream out("table_audit.json", std::ios::binary);
  out << report.str();
  if (!out) {
    detail = "cannot write table_audit.json";
    return false;
  }
  detail = "9 audits over 3 cases, discrepancy report in table_audit.json";
  return true;
}

// 6. End-height model: remainder decay rate, window stability, and exact
// recovery on synthetic model-class data.
bool criterion_asymptotics(std::string& detail) {
  SolverConfig cfg;
  cfg.r_max = 502.0;
  WingSolution w = solve_wing(2, 1.0, cfg);

  const double windows[3][2] = {{50, 200}, {100, 400}, {200, 500}};
  for (const auto& win : windows) {
    EndSeparation es = end_separation(w, win[0], win[1]);
    for (const AsymptoticFit* f : {&es.plus, &es.minus}) {
      if (f->slope < -1.15 || f->slope > -0.85) {
        detail = "remainder slope " + fmt(f->slope) + " on [" + fmt(win[0]) + ", " +
                 fmt(win[1]) + "]";
        return false;
      }
      if (f->model_mismatch) {
        detail = "model mismatch flagged";
        return false;
      }
    }
  }

  EndSeparation first = end_separation(w, 50.0, 158.0);
  EndSeparation second = end_separation(w, 158.0, 500.0);
  const double drift_plus = std::fabs(first.plus.C - second.plus.C);
  const double drift_minus = std::fabs(first.minus.C - second.minus.C);
  if (drift_plus > 1e-3 || drift_minus > 1e-3) {
    detail = "constant drift " + fmt(std::max(drift_plus, drift_minus)) +
             " across half windows";
    return false;
  }

  // exact member of the model class round-trips through the fit
  const double C_true = 0.25, K_true = -3.0;
  std::vector<double> rs, Vs;
  for (int i = 0; i <= 400; ++i) {
    const double r = 50.0 + (500.0 - 50.0) * i / 400.0;
    rs.push_back(r);
    Vs.push_back(r * r / 2.0 - std::log(r) + C_true + K_true / r);
  }
  AsymptoticFit syn = fit_height_model(2, rs, Vs, 50.0, 500.0);
  if (std::fabs(syn.C - C_true) > 1e-9 || std::fabs(syn.K - K_true) > 1e-9) {
    detail = "synthetic recovery off by " + fmt(std::fabs(syn.C - C_true));
    return false;
  }
  detail = "3 windows, drift " + fmt(std::max(drift_plus, drift_minus)) +
           ", synthetic error " + fmt(std::fabs(syn.C - C_true));
  return true;
}

// 7. Integrator order study plus agreement with the reference integrator on
// production solves.
bool criterion_integrator(std::string& detail) {
  // observed order on a smooth stretch, measured at the shared endpoint
  const double s_end = 3.0;
  const double hs[3] = {0.15, 0.075, 0.0375};
  const RefState start = bowl_axis_start(2, 0.1);
  const RefState truth = ref_integrate(2, start, s_end, 1e-5);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double h : hs) {
    SolverConfig cfg;
    cfg.eps_start = 0.1;
    cfg.fixed_step = true;
    cfg.step_init = h;
    cfg.s_end = s_end;
    cfg.r_max = 100.0;
    ProfileCurve c = solve_bowl(2, cfg);
    const double err = std::fabs(c.r.back() - truth.r) + std::fabs(c.V.back() - truth.V) +
                       std::fabs(c.alpha.back() - truth.alpha);
    const double x = std::log(h), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double order = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  if (std::fabs(order - 5.0) > 0.3) {
    detail = "observed order " + fmt(order);
    return false;
  }

  // production bowl against the reference, compared at arc length 5
  SolverConfig cfg;
  cfg.r_max = 10.0;
  ProfileCurve bowl = solve_bowl(2, cfg);
  const RefState oracle = ref_integrate(2, bowl_axis_start(2, cfg.eps_start), 5.0, 1e-5);
  const auto at5 = bowl.at(5.0);
  const double bowl_err =
      std::max(std::fabs(at5[0] - oracle.r), std::fabs(at5[1] - oracle.V));
  if (bowl_err > 1e-7) {
    detail = "bowl drifted " + fmt(bowl_err) + " from the reference";
    return false;
  }

  // production turning point against the reference march
  SolverConfig wcfg;
  wcfg.r_max = 6.0;
  WingSolution w = solve_wing(2, 1.0, wcfg);
  double R_star_ref = 0.0, depth_ref = 0.0;
  ref_turning_point(2, 1.0, R_star_ref, depth_ref);
  const double turn_err =
      std::max(std::fabs(w.R_star - R_star_ref), std::fabs(w.depth - depth_ref));
  if (turn_err > 1e-7) {
    detail = "turning point drifted " + fmt(turn_err) + " from the reference";
    return false;
  }
  detail = "order " + fmt(order) + ", bowl err " + fmt(bowl_err) + ", turning err " +
           fmt(turn_err);
  return true;
}

// 8. Obstacle sweeps at desk scale: the family member recovers itself and a
// point under the graph recovers its vertical gap.
bool criterion_sweeps(std::string& detail) {
  const auto t0 = clock_type::now();

  // self obstacle: sample the R = 1 member and truncate before the radius
  // where neighboring members start crossing it
  SolverConfig gen;
  gen.r_max = 4.0;
  WingSolution w = solve_wing(2, 1.0, gen);
  ObstacleProfile dense = obstacle_from_curve(w.meridian(), 5e-4);
  ObstacleProfile obstacle;
  for (size_t i = 0; i < dense.size(); ++i) {
    if (dense.r[i] <= 1.4) {
      obstacle.r.push_back(dense.r[i]);
      obstacle.x.push_back(dense.x[i]);
    }
  }
  SweepResult ap = sweep_aperture(obstacle, 2, 3.0, 1e-6);
  if (!ap.critical_found || std::fabs(ap.critical_value - 1.0) > 1e-6) {
    detail = "self obstacle recovered " + fmt(ap.critical_value);
    return false;
  }

  // point under the graph: the critical shift is the vertical gap
  ObstacleProfile point;
  point.r = {2.0};
  point.x = {-1.5};
  SweepResult tr = sweep_translate(point, 2, -1, 1e-10);
  const double gap = ref_bowl_height(2, 2.0, 1e-6) + 1.5;
  if (!tr.critical_found || std::fabs(tr.critical_value - gap) > 1e-6) {
    detail = "gap recovered as " + fmt(tr.critical_value) + ", reference " + fmt(gap);
    return false;
  }

  const double dt = seconds_since(t0);
  if (dt >= 30.0) {
    detail = "sweeps took " + fmt(dt) + " s";
    return false;
  }
  detail = "aperture error " + fmt(std::fabs(ap.critical_value - 1.0)) +
           ", translate error " + fmt(std::fabs(tr.critical_value - gap)) + ", " +
           fmt(dt) + " s";
  return true;
}

struct Criterion {
  const char* label;
  bool (*fn)(std::string&);
};

} // namespace

int main() {
  const Criterion criteria[8] = {
      {"wing geometry and turning-point bounds", criterion_wing_geometry},
      {"funnel containment of the family", criterion_containment},
      {"profile inequality suite", criterion_bound_suite},
      {"exact subsolution sign certificates", criterion_lemmas},
      {"coefficient table audit", criterion_table_audit},
      {"end-height asymptotics", criterion_asymptotics},
      {"integrator order and oracle agreement", criterion_integrator},
      {"obstacle sweeps", criterion_sweeps},
  };

  bool all = true;
  for (int i = 0; i < 8; ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    all = all && ok;
    std::printf("%s  %d. %s (%s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].label,
                detail.c_str());
  }
  return all ? 0 : 1;
}
