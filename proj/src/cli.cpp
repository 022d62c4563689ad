#include "tsol/cli.hpp"

#include "tsol/asymptotics.hpp"
#include "tsol/bounds.hpp"
#include "tsol/funnel.hpp"
#include "tsol/io.hpp"
#include "tsol/profile_ode.hpp"
#include "tsol/subsolution.hpp"
#include "tsol/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace tsol {

namespace {

constexpr const char* kToolVersion = "1.0.0";

JsonValue envelope(const std::string& subcommand, JsonValue params, JsonValue results,
                   const std::string& verdict) {
  JsonValue doc = JsonValue::object();
  doc.set("tool_version", JsonValue::string(kToolVersion));
  doc.set("subcommand", JsonValue::string(subcommand));
  doc.set("params", std::move(params));
  doc.set("results", std::move(results));
  doc.set("verdict", JsonValue::string(verdict));
  return doc;
}

JsonValue report_json(const BoundReport& rep) {
  JsonValue j = JsonValue::object();
  j.set("bound", JsonValue::string(bound_name(rep.bound)));
  j.set("r_lo", JsonValue::number(rep.r_lo));
  j.set("r_hi", JsonValue::number(rep.r_hi));
  j.set("grid_size", JsonValue::integer(rep.grid_size));
  j.set("min_margin", JsonValue::number(rep.min_margin));
  j.set("worst_r", JsonValue::number(rep.worst_r));
  j.set("tolerance", JsonValue::number(rep.tolerance));
  j.set("pass", JsonValue::boolean(rep.pass));
  j.set("note", JsonValue::string(rep.note));
  return j;
}

JsonValue fit_json(const char* branch, const AsymptoticFit& f) {
  JsonValue j = JsonValue::object();
  j.set("branch", JsonValue::string(branch));
  j.set("C", JsonValue::number(f.C));
  j.set("K", JsonValue::number(f.K));
  j.set("slope", JsonValue::number(f.slope));
  j.set("window_lo", JsonValue::number(f.window_lo));
  j.set("window_hi", JsonValue::number(f.window_hi));
  j.set("nodes", JsonValue::integer(f.nodes));
  j.set("max_residual", JsonValue::number(f.max_residual));
  j.set("model_mismatch", JsonValue::boolean(f.model_mismatch));
  return j;
}

JsonValue audit_json(const TableAudit& a) {
  JsonValue rows = JsonValue::array();
  for (const auto& row : a.rows) {
    JsonValue r = JsonValue::object();
    r.set("k", JsonValue::integer(row.k));
    r.set("a", JsonValue::string(row.a));
    r.set("b", JsonValue::string(row.b));
    r.set("equal", JsonValue::boolean(row.equal));
    rows.push(std::move(r));
  }
  JsonValue j = JsonValue::object();
  j.set("a_label", JsonValue::string(a.a_label));
  j.set("b_label", JsonValue::string(a.b_label));
  j.set("rows", std::move(rows));
  j.set("identical", JsonValue::boolean(a.identical));
  j.set("scalar_multiple", JsonValue::boolean(a.scalar_multiple));
  j.set("factor", JsonValue::string(a.factor));
  j.set("proportional", JsonValue::boolean(a.proportional));
  return j;
}

JsonValue coeff_strings(const std::vector<BigRational>& cs) {
  JsonValue arr = JsonValue::array();
  for (const auto& c : cs) arr.push(JsonValue::string(rational_to_string(c)));
  return arr;
}

bool parse_window(const std::string& text, double& lo, double& hi) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 >= text.size()) return false;
  try {
    size_t used = 0;
    lo = std::stod(text.substr(0, comma), &used);
    if (used != comma) return false;
    const std::string rest = text.substr(comma + 1);
    hi = std::stod(rest, &used);
    if (used != rest.size()) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

int cmd_solve(int n, bool bowl, bool has_R, double R, double rmax, double tol,
              std::ostream& sink) {
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.r_max = rmax;
  if (bowl) {
    write_profile_csv(sink, solve_bowl(n, cfg));
  } else {
    if (!has_R) throw DomainError("solve needs --R or --bowl");
    write_profile_csv(sink, solve_wing(n, R, cfg).meridian());
  }
  return 0;
}

int cmd_bounds(int n, double R, double rmax, double tol, double quad_tol,
               const std::string& bound_id, std::ostream& sink) {
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.r_max = rmax;
  WingSolution w = solve_wing(n, R, cfg);
  std::vector<BoundReport> reports = check_all(w, rmax, quad_tol);
  if (!bound_id.empty()) {
    const BoundId want = bound_from_name(bound_id);
    std::vector<BoundReport> one;
    for (const auto& rep : reports)
      if (rep.bound == want) one.push_back(rep);
    if (one.empty())
      throw DomainError("bound is not part of the canonical suite: " + bound_id);
    reports.swap(one);
  }
  bool ok = true;
  JsonValue results = JsonValue::array();
  for (const auto& rep : reports) {
    ok = ok && rep.pass;
    results.push(report_json(rep));
  }
  JsonValue params = JsonValue::object();
  params.set("n", JsonValue::integer(n));
  params.set("R", JsonValue::number(R));
  params.set("rmax", JsonValue::number(rmax));
  params.set("tol", JsonValue::number(tol));
  params.set("quad_tol", JsonValue::number(quad_tol));
  if (!bound_id.empty()) params.set("bound", JsonValue::string(bound_id));
  sink << envelope("bounds", std::move(params), std::move(results), ok ? "pass" : "fail").str();
  return ok ? 0 : 1;
}

int cmd_funnel(int n, double R0, double lambda, double rmax, double tol, int mode,
               const std::vector<double>& avoid, std::ostream& sink) {
  JsonValue params = JsonValue::object();
  params.set("n", JsonValue::integer(n));
  params.set("R0", JsonValue::number(R0));
  params.set("lambda", JsonValue::number(lambda));

  JsonValue results = JsonValue::array();
  std::string verdict = "pass";
  int code = 0;

  if (mode == 0) { // containment of the wing with waist R0
    params.set("rmax", JsonValue::number(rmax));
    params.set("tol", JsonValue::number(tol));
    SolverConfig cfg;
    cfg.tol = tol;
    cfg.r_max = rmax;
    WingSolution w = solve_wing(n, R0, cfg);
    BoundReport rep = verify_wing_containment(w, lambda, rmax);
    results.push(report_json(rep));
    verdict = rep.pass ? "pass" : "fail";
    code = rep.pass ? 0 : 1;
  } else if (mode == 1) { // excess region bounding box
    try {
      BoundingBox box = excess_region_bound(n, lambda, R0);
      JsonValue j = JsonValue::object();
      j.set("r_max", JsonValue::number(box.r_max));
      j.set("V_min", JsonValue::number(box.V_min));
      j.set("V_max", JsonValue::number(box.V_max));
      results.push(std::move(j));
    } catch (const std::runtime_error& e) {
      JsonValue j = JsonValue::object();
      j.set("note", JsonValue::string(e.what()));
      results.push(std::move(j));
      verdict = "fail";
      code = 1;
    }
  } else { // funnel placed clear of a half cylinder
    params.set("rho", JsonValue::number(avoid[0]));
    params.set("h0", JsonValue::number(avoid[1]));
    Funnel f = funnel_avoiding_half_cylinder(n, avoid[0], avoid[1], lambda);
    JsonValue off = JsonValue::array();
    for (double c : f.y0_horizontal) off.push(JsonValue::number(c));
    JsonValue j = JsonValue::object();
    j.set("n", JsonValue::integer(f.n));
    j.set("R0", JsonValue::number(f.R0));
    j.set("lambda", JsonValue::number(f.lambda));
    j.set("y0_horizontal", std::move(off));
    j.set("y0_vertical", JsonValue::number(f.y0_vertical));
    results.push(std::move(j));
  }
  sink << envelope("funnel", std::move(params), std::move(results), verdict).str();
  return code;
}

int cmd_subsol(int n, const std::string& rstar_text, int mode, std::ostream& sink) {
  const BigRational R_star = rational_from_string(rstar_text);
  if (rational_sign(R_star) < 0) throw DomainError("Rstar must be nonnegative");

  JsonValue params = JsonValue::object();
  params.set("n", JsonValue::integer(n));
  params.set("Rstar", JsonValue::string(rational_to_string(R_star)));

  JsonValue results = JsonValue::array();
  std::string verdict;
  int code = 0;

  if (mode == 0) { // verify
    const RationalPolynomial p = derive_polynomial(n, R_star);
    const SignVerdict v = nonpositive_on_ray(p, R_star);
    JsonValue j = JsonValue::object();
    j.set("kind", JsonValue::string(verdict_name(v.kind)));
    j.set("root_count", JsonValue::integer(v.root_count));
    if (v.kind == SignVerdict::Kind::sign_change) {
      j.set("bracket_lo", JsonValue::string(rational_to_string(v.bracket_lo)));
      j.set("bracket_hi", JsonValue::string(rational_to_string(v.bracket_hi)));
      j.set("bracket_lo_approx", JsonValue::number(rational_to_double(v.bracket_lo)));
      j.set("bracket_hi_approx", JsonValue::number(rational_to_double(v.bracket_hi)));
    }
    results.push(std::move(j));
    verdict = verdict_name(v.kind);
    const bool ok = v.kind == SignVerdict::Kind::nonpositive_on_ray ||
                    v.kind == SignVerdict::Kind::identically_zero;
    code = ok ? 0 : 1;
  } else if (mode == 1) { // tables
    const RationalPolynomial p = derive_polynomial(n, R_star);
    const auto printed_origin = printed_coefficients(n, R_star, CoefficientBasis::origin);
    const auto printed_centered = printed_coefficients(n, R_star, CoefficientBasis::centered);
    JsonValue j = JsonValue::object();
    j.set("printed_origin",
          coeff_strings({printed_origin.begin(), printed_origin.end()}));
    j.set("printed_centered",
          coeff_strings({printed_centered.begin(), printed_centered.end()}));
    j.set("derived_origin", coeff_strings(p.coefficients()));
    j.set("derived_centered", coeff_strings(taylor_shift(p, R_star).coefficients()));
    results.push(std::move(j));
    verdict = "report";
  } else { // diff
    const TableAudit audits[3] = {
        audit_printed_table(n, R_star, CoefficientBasis::origin),
        audit_printed_table(n, R_star, CoefficientBasis::centered),
        audit_shifted_tables(n, R_star),
    };
    bool clean = true;
    for (const TableAudit& a : audits) {
      clean = clean && (a.identical || a.proportional);
      results.push(audit_json(a));
    }
    verdict = clean ? "consistent" : "discrepancy";
    code = clean ? 0 : 1;
  }
  sink << envelope("subsol", std::move(params), std::move(results), verdict).str();
  return code;
}

int cmd_asymfit(int n, double R, double wlo, double whi, double tol, bool emit_csv,
                std::ostream& sink) {
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.r_max = whi + 1.0;
  WingSolution w = solve_wing(n, R, cfg);
  if (emit_csv) {
    GraphProfile up = graph_view(w.upper, w.R + 1e-12 * (1.0 + w.R));
    sink << "r,C_est\n";
    for (const auto& [r, c] : constant_samples(up, wlo, whi))
      sink << fmt17(r) << ',' << fmt17(c) << '\n';
    return 0;
  }
  EndSeparation es = end_separation(w, wlo, whi);
  JsonValue results = JsonValue::array();
  results.push(fit_json("upper", es.plus));
  results.push(fit_json("lower", es.minus));
  JsonValue sep = JsonValue::object();
  sep.set("delta", JsonValue::number(es.delta));
  results.push(std::move(sep));
  JsonValue params = JsonValue::object();
  params.set("n", JsonValue::integer(n));
  params.set("R", JsonValue::number(R));
  params.set("window_lo", JsonValue::number(wlo));
  params.set("window_hi", JsonValue::number(whi));
  params.set("tol", JsonValue::number(tol));
  const bool ok = !es.plus.model_mismatch && !es.minus.model_mismatch;
  sink << envelope("asymfit", std::move(params), std::move(results), ok ? "pass" : "fail").str();
  return ok ? 0 : 1;
}

int cmd_sweep(int n, bool aperture_mode, double R0, int sign,
              const std::string& obstacle_path, double tol, std::ostream& sink) {
  std::ifstream in(obstacle_path);
  if (!in) throw DomainError("cannot open obstacle file: " + obstacle_path);
  ObstacleProfile obstacle = read_obstacle_csv(in);
  SweepResult res = aperture_mode ? sweep_aperture(obstacle, n, R0, tol)
                                  : sweep_translate(obstacle, n, sign, tol);
  JsonValue params = JsonValue::object();
  params.set("n", JsonValue::integer(n));
  if (aperture_mode)
    params.set("aperture", JsonValue::number(R0));
  else
    params.set("translate", JsonValue::integer(sign));
  params.set("obstacle", JsonValue::string(obstacle_path));
  params.set("tol", JsonValue::number(tol));
  JsonValue j = JsonValue::object();
  j.set("critical_found", JsonValue::boolean(res.critical_found));
  j.set("critical_value", JsonValue::number(res.critical_value));
  j.set("touch_found", JsonValue::boolean(res.touch_found));
  j.set("touch_r", JsonValue::number(res.touch_r));
  j.set("touch_x", JsonValue::number(res.touch_x));
  j.set("iterations", JsonValue::integer(res.iterations));
  j.set("case_note", JsonValue::string(res.case_note));
  JsonValue results = JsonValue::array();
  results.push(std::move(j));
  sink << envelope("sweep", std::move(params), std::move(results),
                   res.critical_found ? "found" : "missed")
              .str();
  return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"rotationally symmetric translator profiles, bounds, and sweeps"};
  app.require_subcommand(1);

  int n = 2;
  double R = 1.0;
  bool bowl = false;
  double rmax = 100.0;
  double tol = 1e-10;
  double quad_tol = 1e-8;
  std::string out_path;
  std::string bound_id;
  bool all_bounds = false;
  double R0 = 1.0;
  double lambda = 1.0;
  bool check_wing = false;
  bool excess = false;
  std::vector<double> avoid;
  std::string rstar_text;
  bool do_verify = false, do_tables = false, do_diff = false;
  std::string window_text;
  bool emit_csv = false;
  double aperture = 0.0;
  int translate_sign = 0;
  std::string obstacle_path;

  CLI::App* solve = app.add_subcommand("solve", "integrate a profile and write CSV");
  solve->add_option("--n", n, "rotational dimension, at least 2")->required();
  CLI::Option* solve_R = solve->add_option("--R", R, "waist radius of the wing");
  solve->add_flag("--bowl", bowl, "solve the entire bowl instead of a wing");
  solve->add_option("--rmax", rmax, "integrate until this radius");
  solve->add_option("--tol", tol, "integrator tolerance");
  solve->add_option("--out", out_path, "output path, stdout when omitted");

  CLI::App* bounds = app.add_subcommand("bounds", "check profile inequalities");
  bounds->add_option("--n", n, "rotational dimension, at least 2")->required();
  bounds->add_option("--R", R, "waist radius of the wing")->required();
  bounds->add_option("--rmax", rmax, "check up to this radius");
  bounds->add_option("--tol", tol, "integrator tolerance");
  bounds->add_option("--quadtol", quad_tol, "quadrature tolerance for integral terms");
  bounds->add_option("--bound", bound_id, "check a single inequality by name");
  bounds->add_flag("--all", all_bounds, "check the whole suite (the default)");
  bounds->add_option("--out", out_path, "output path, stdout when omitted");

  CLI::App* funnel = app.add_subcommand("funnel", "barrier region checks");
  funnel->add_option("--n", n, "rotational dimension, at least 2")->required();
  funnel->add_option("--R0", R0, "funnel aperture radius")->required();
  funnel->add_option("--lambda", lambda, "lower wall log coefficient in [0, 1]");
  funnel->add_flag("--check-wing", check_wing, "verify the wing with waist R0 stays inside");
  funnel->add_flag("--excess", excess, "bound the region swept while shrinking the aperture");
  funnel->add_option("--avoid-cylinder", avoid,
                     "place a funnel clear of the half cylinder (rho, h0)")
      ->expected(2);
  funnel->add_option("--rmax", rmax, "containment check range");
  funnel->add_option("--tol", tol, "integrator tolerance");
  funnel->add_option("--out", out_path, "output path, stdout when omitted");

  CLI::App* subsol = app.add_subcommand("subsol", "exact subsolution polynomial checks");
  subsol->add_option("--n", n, "rotational dimension, at least 2")->required();
  subsol->add_option("--Rstar", rstar_text, "turning radius as an exact rational, e.g. 1/2")
      ->required();
  subsol->add_flag("--verify", do_verify, "sign of the derived polynomial on the ray");
  subsol->add_flag("--tables", do_tables, "emit printed and derived coefficient tables");
  subsol->add_flag("--diff", do_diff, "compare printed tables against the derived polynomial");
  subsol->add_option("--out", out_path, "output path, stdout when omitted");

  CLI::App* asymfit = app.add_subcommand("asymfit", "fit the height constant at the ends");
  asymfit->add_option("--n", n, "rotational dimension, at least 2")->required();
  asymfit->add_option("--R", R, "waist radius of the wing")->required();
  asymfit->add_option("--window", window_text, "fit window as lo,hi")->required();
  asymfit->add_option("--tol", tol, "integrator tolerance");
  asymfit->add_flag("--csv", emit_csv, "emit (r, C_est) samples instead of the fit");
  asymfit->add_option("--out", out_path, "output path, stdout when omitted");

  CLI::App* sweep = app.add_subcommand("sweep", "move the family against an obstacle");
  sweep->add_option("--n", n, "rotational dimension, at least 2")->required();
  CLI::Option* sweep_ap = sweep->add_option("--aperture", aperture, "shrink the waist from R0");
  CLI::Option* sweep_tr =
      sweep->add_option("--translate", translate_sign, "translate the bowl, sign -1 or +1");
  sweep->add_option("--obstacle", obstacle_path, "obstacle meridian CSV r,x")->required();
  sweep->add_option("--tol", tol, "bisection tolerance");
  sweep->add_option("--out", out_path, "output path, stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file: " << out_path << "\n";
      return 2;
    }
    sink = &file;
  }

  try {
    if (solve->parsed()) return cmd_solve(n, bowl, solve_R->count() > 0, R, rmax, tol, *sink);
    if (bounds->parsed()) {
      if (all_bounds && !bound_id.empty()) {
        err << "error: choose either --bound or --all, not both\n";
        return 2;
      }
      return cmd_bounds(n, R, rmax, tol, quad_tol, bound_id, *sink);
    }
    if (funnel->parsed()) {
      const int picked = (check_wing ? 1 : 0) + (excess ? 1 : 0) + (avoid.empty() ? 0 : 1);
      if (picked != 1) {
        err << "error: funnel needs exactly one of --check-wing, --excess, --avoid-cylinder\n";
        return 2;
      }
      const int mode = check_wing ? 0 : excess ? 1 : 2;
      return cmd_funnel(n, R0, lambda, rmax, tol, mode, avoid, *sink);
    }
    if (subsol->parsed()) {
      const int picked = (do_verify ? 1 : 0) + (do_tables ? 1 : 0) + (do_diff ? 1 : 0);
      if (picked != 1) {
        err << "error: subsol needs exactly one of --verify, --tables, --diff\n";
        return 2;
      }
      const int mode = do_verify ? 0 : do_tables ? 1 : 2;
      return cmd_subsol(n, rstar_text, mode, *sink);
    }
    if (asymfit->parsed()) {
      double wlo = 0.0, whi = 0.0;
      if (!parse_window(window_text, wlo, whi)) {
        err << "error: --window expects two numbers as lo,hi\n";
        return 2;
      }
      return cmd_asymfit(n, R, wlo, whi, tol, emit_csv, *sink);
    }
    if (sweep->parsed()) {
      const bool has_ap = sweep_ap->count() > 0;
      const bool has_tr = sweep_tr->count() > 0;
      if (has_ap == has_tr) {
        err << "error: sweep needs exactly one of --aperture or --translate\n";
        return 2;
      }
      return cmd_sweep(n, has_ap, aperture, translate_sign, obstacle_path, tol, *sink);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const FitError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const IntegrationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand selected\n";
  return 2;
}

} // namespace tsol
