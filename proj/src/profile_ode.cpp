#include "tsol/profile_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tsol {

namespace {

struct State {
  double r, V, a;
};

inline State eval_rhs(int n, const State& y) {
  const double ca = std::cos(y.a), sa = std::sin(y.a);
  return {ca, sa, ca - (n - 1) * sa / y.r};
}

inline bool finite(const State& y) {
  return std::isfinite(y.r) && std::isfinite(y.V) && std::isfinite(y.a);
}

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = B1 - 5179.0 / 57600, E3 = B3 - 7571.0 / 16695, E4 = B4 - 393.0 / 640,
                 E5 = B5 + 92097.0 / 339200, E6 = B6 - 187.0 / 2100, E7 = -1.0 / 40;

inline State axpy(const State& y, double h, double c1, const State& k1) {
  return {y.r + h * c1 * k1.r, y.V + h * c1 * k1.V, y.a + h * c1 * k1.a};
}

struct StepResult {
  State y;
  State f;          // RHS at y (FSAL stage)
  double err;       // scaled error norm
  bool usable;      // all stages finite and r stayed positive
};

StepResult dopri5_step(int n, const State& y0, const State& f0, double h, double tol) {
  StepResult out;
  out.usable = false;
  out.err = std::numeric_limits<double>::infinity();

  auto stage_ok = [](const State& y) { return y.r > 0.0; };

  State y2 = axpy(y0, h, A21, f0);
  if (!stage_ok(y2)) return out;
  State k2 = eval_rhs(n, y2);

  State y3{y0.r + h * (A31 * f0.r + A32 * k2.r), y0.V + h * (A31 * f0.V + A32 * k2.V),
           y0.a + h * (A31 * f0.a + A32 * k2.a)};
  if (!stage_ok(y3)) return out;
  State k3 = eval_rhs(n, y3);

  State y4{y0.r + h * (A41 * f0.r + A42 * k2.r + A43 * k3.r),
           y0.V + h * (A41 * f0.V + A42 * k2.V + A43 * k3.V),
           y0.a + h * (A41 * f0.a + A42 * k2.a + A43 * k3.a)};
  if (!stage_ok(y4)) return out;
  State k4 = eval_rhs(n, y4);

  State y5{y0.r + h * (A51 * f0.r + A52 * k2.r + A53 * k3.r + A54 * k4.r),
           y0.V + h * (A51 * f0.V + A52 * k2.V + A53 * k3.V + A54 * k4.V),
           y0.a + h * (A51 * f0.a + A52 * k2.a + A53 * k3.a + A54 * k4.a)};
  if (!stage_ok(y5)) return out;
  State k5 = eval_rhs(n, y5);

  State y6{y0.r + h * (A61 * f0.r + A62 * k2.r + A63 * k3.r + A64 * k4.r + A65 * k5.r),
           y0.V + h * (A61 * f0.V + A62 * k2.V + A63 * k3.V + A64 * k4.V + A65 * k5.V),
           y0.a + h * (A61 * f0.a + A62 * k2.a + A63 * k3.a + A64 * k4.a + A65 * k5.a)};
  if (!stage_ok(y6)) return out;
  State k6 = eval_rhs(n, y6);

  State y7{y0.r + h * (B1 * f0.r + B3 * k3.r + B4 * k4.r + B5 * k5.r + B6 * k6.r),
           y0.V + h * (B1 * f0.V + B3 * k3.V + B4 * k4.V + B5 * k5.V + B6 * k6.V),
           y0.a + h * (B1 * f0.a + B3 * k3.a + B4 * k4.a + B5 * k5.a + B6 * k6.a)};
  if (!stage_ok(y7) || !finite(y7)) return out;
  State k7 = eval_rhs(n, y7);

  const double er = h * (E1 * f0.r + E3 * k3.r + E4 * k4.r + E5 * k5.r + E6 * k6.r + E7 * k7.r);
  const double eV = h * (E1 * f0.V + E3 * k3.V + E4 * k4.V + E5 * k5.V + E6 * k6.V + E7 * k7.V);
  const double ea = h * (E1 * f0.a + E3 * k3.a + E4 * k4.a + E5 * k5.a + E6 * k6.a + E7 * k7.a);

  auto scaled = [&](double e, double v0, double v1) {
    const double sc = tol + tol * std::max(std::fabs(v0), std::fabs(v1));
    return e / sc;
  };
  const double sr = scaled(er, y0.r, y7.r), sV = scaled(eV, y0.V, y7.V),
               sa = scaled(ea, y0.a, y7.a);
  out.err = std::sqrt((sr * sr + sV * sV + sa * sa) / 3.0);
  out.y = y7;
  out.f = k7;
  out.usable = finite(y7) && std::isfinite(out.err);
  return out;
}

void push_sample(ProfileCurve& c, double s, const State& y, const State& f) {
  c.s.push_back(s);
  c.r.push_back(y.r);
  c.V.push_back(y.V);
  c.alpha.push_back(y.a);
  c.dr.push_back(f.r);
  c.dV.push_back(f.V);
  c.dalpha.push_back(f.a);
}

// Integrate from (s0, y0) until r >= cfg.r_max, or until cfg.s_end if set.
ProfileCurve integrate(int n, double s0, State y0, const SolverConfig& cfg) {
  cfg.validate();
  if (n < 2) throw DomainError("profile: dimension parameter n must be >= 2");
  if (y0.r <= 0.0) throw DomainError("profile: start radius must be positive");

  ProfileCurve c;
  c.n = n;
  State f0 = eval_rhs(n, y0);
  double s = s0;
  push_sample(c, s, y0, f0);

  const bool stop_on_s = cfg.s_end > 0.0;
  double h = cfg.fixed_step ? cfg.step_init : std::min(cfg.step_init, cfg.step_max);

  for (std::size_t step = 0; step < cfg.max_steps; ++step) {
    if (!stop_on_s && y0.r >= cfg.r_max) return c;
    if (stop_on_s && s >= cfg.s_end * (1.0 - 1e-15)) return c;

    double h_try = h;
    if (stop_on_s) h_try = std::min(h_try, cfg.s_end - s);

    StepResult res = dopri5_step(n, y0, f0, h_try, cfg.tol);

    if (cfg.fixed_step) {
      if (!res.usable)
        throw IntegrationError("profile: fixed step failed", s, y0.r, y0.V, y0.a);
      s += h_try;
      y0 = res.y;
      f0 = res.f;
      push_sample(c, s, y0, f0);
      continue;
    }

    if (!res.usable) {
      h = std::max(h_try * 0.25, 1e-14);
      continue;
    }
    if (res.err <= 1.0) {
      s += h_try;
      y0 = res.y;
      f0 = res.f;
      push_sample(c, s, y0, f0);
      const double grow = 0.9 * std::pow(std::max(res.err, 1e-10), -0.2);
      h = std::min(h_try * std::clamp(grow, 0.2, 5.0), cfg.step_max);
    } else {
      const double shrink = 0.9 * std::pow(res.err, -0.2);
      h = h_try * std::clamp(shrink, 0.2, 0.9);
    }
    if (h < 1e-14)
      throw IntegrationError("profile: step size underflow", s, y0.r, y0.V, y0.a);
  }
  throw IntegrationError("profile: max step count exceeded", s, y0.r, y0.V, y0.a);
}

inline double hermite(double t, double h, double y0, double d0, double y1, double d1) {
  const double u = 1.0 - t;
  return u * u * (1.0 + 2.0 * t) * y0 + t * u * u * h * d0 + t * t * (3.0 - 2.0 * t) * y1 -
         t * t * u * h * d1;
}

// Fornberg weights for the first derivative at x0 from the given nodes.
void fd_weights_first(const double* x, int m, double x0, double* w) {
  std::vector<double> C(static_cast<size_t>(m) * 2, 0.0);
  C[0] = 1.0;
  double c1 = 1.0, c4 = x[0] - x0;
  for (int i = 1; i < m; ++i) {
    const int mn = std::min(i, 1);
    double c2 = 1.0, c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          C[static_cast<size_t>(i) * 2 + static_cast<size_t>(k)] =
              c1 *
              (k * C[static_cast<size_t>(i - 1) * 2 + static_cast<size_t>(k) - 1] -
               c5 * C[static_cast<size_t>(i - 1) * 2 + static_cast<size_t>(k)]) /
              c2;
        C[static_cast<size_t>(i) * 2] = -c1 * c5 * C[static_cast<size_t>(i - 1) * 2] / c2;
      }
      for (int k = mn; k >= 1; --k)
        C[static_cast<size_t>(j) * 2 + static_cast<size_t>(k)] =
            (c4 * C[static_cast<size_t>(j) * 2 + static_cast<size_t>(k)] -
             k * C[static_cast<size_t>(j) * 2 + static_cast<size_t>(k) - 1]) /
            c3;
      C[static_cast<size_t>(j) * 2] = c4 * C[static_cast<size_t>(j) * 2] / c3;
    }
    c1 = c2;
  }
  for (int j = 0; j < m; ++j) w[j] = C[static_cast<size_t>(j) * 2 + 1];
}

} // namespace

void SolverConfig::validate() const {
  if (!(tol > 0.0) || tol > 1e-2) throw DomainError("solver: tol must be in (0, 1e-2]");
  if (!(r_max > 0.0)) throw DomainError("solver: r_max must be positive");
  if (!(eps_start > 0.0) || eps_start > 0.1)
    throw DomainError("solver: eps_start must be in (0, 0.1]");
  if (!(step_init > 0.0)) throw DomainError("solver: step_init must be positive");
  if (!(step_max > 0.0)) throw DomainError("solver: step_max must be positive");
  if (s_end < 0.0) throw DomainError("solver: s_end must be nonnegative");
}

std::array<double, 3> translator_rhs(int n, double r, double V, double alpha) {
  if (n < 2) throw DomainError("translator_rhs: n must be >= 2");
  if (!(r > 0.0)) throw DomainError("translator_rhs: r must be positive");
  (void)V; // the system is autonomous in V
  State f = eval_rhs(n, {r, V, alpha});
  return {f.r, f.V, f.a};
}

std::array<double, 3> ProfileCurve::at(double ss) const {
  if (s.size() < 2) throw DomainError("curve: dense output needs at least two samples");
  const double lo = s.front(), hi = s.back();
  const double slack = 1e-9 * (1.0 + std::fabs(hi - lo));
  if (ss < lo - slack || ss > hi + slack)
    throw DomainError("curve: arc length outside sampled range");
  ss = std::clamp(ss, lo, hi);
  auto it = std::upper_bound(s.begin(), s.end(), ss);
  size_t i = (it == s.begin()) ? 0 : static_cast<size_t>(it - s.begin()) - 1;
  if (i + 1 >= s.size()) i = s.size() - 2;
  const double h = s[i + 1] - s[i];
  const double t = (ss - s[i]) / h;
  return {hermite(t, h, r[i], dr[i], r[i + 1], dr[i + 1]),
          hermite(t, h, V[i], dV[i], V[i + 1], dV[i + 1]),
          hermite(t, h, alpha[i], dalpha[i], alpha[i + 1], dalpha[i + 1])};
}

double ProfileCurve::r_extent() const {
  double m = 0.0;
  for (double v : r) m = std::max(m, v);
  return m;
}

ProfileCurve solve_bowl(int n, const SolverConfig& cfg) {
  if (n < 2) throw DomainError("solve_bowl: n must be >= 2");
  cfg.validate();
  if (cfg.r_max <= cfg.eps_start) throw DomainError("solve_bowl: r_max below axis start");
  const double e = cfg.eps_start;
  State y0{e, e * e / (2.0 * n), std::atan(e / n)};
  return integrate(n, 0.0, y0, cfg);
}

WingSolution solve_wing(int n, double R, const SolverConfig& cfg) {
  if (n < 2) throw DomainError("solve_wing: n must be >= 2");
  if (!(R > 0.0))
    throw DomainError("solve_wing: waist radius must be positive (the bowl is solve_bowl)");
  cfg.validate();
  if (cfg.r_max <= R + 2.0)
    throw DomainError("solve_wing: r_max must exceed R + 2 to clear the turning point");

  WingSolution w;
  w.n = n;
  w.R = R;
  constexpr double half_pi = 1.5707963267948966;
  w.lower = integrate(n, 0.0, State{R, 0.0, -half_pi}, cfg);
  w.upper = integrate(n, 0.0, State{R, 0.0, half_pi}, cfg);

  // Turning point: alpha crosses 0 from below on the lower branch.
  const auto& a = w.lower.alpha;
  size_t k = a.size();
  for (size_t i = 0; i + 1 < a.size(); ++i) {
    if (a[i] < 0.0 && a[i + 1] >= 0.0) {
      k = i;
      break;
    }
  }
  if (k == a.size())
    throw IntegrationError("solve_wing: turning point not reached before r_max",
                           w.lower.s.back(), w.lower.r.back(), w.lower.V.back(),
                           w.lower.alpha.back());

  double lo = w.lower.s[k], hi = w.lower.s[k + 1];
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (w.lower.at(mid)[2] < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  w.s_turn = 0.5 * (lo + hi);
  const auto turn = w.lower.at(w.s_turn);
  w.R_star = turn[0];
  w.depth = -turn[1];
  return w;
}

ProfileCurve WingSolution::meridian() const {
  ProfileCurve c;
  c.n = n;
  const size_t m = upper.size();
  constexpr double pi = 3.141592653589793;
  for (size_t i = 0; i < m; ++i) {
    const size_t j = m - 1 - i;
    c.s.push_back(-upper.s[j]);
    c.r.push_back(upper.r[j]);
    c.V.push_back(upper.V[j]);
    c.alpha.push_back(upper.alpha[j] - pi);
    c.dr.push_back(-upper.dr[j]);
    c.dV.push_back(-upper.dV[j]);
    c.dalpha.push_back(-upper.dalpha[j]);
  }
  for (size_t i = 1; i < lower.size(); ++i) {
    c.s.push_back(lower.s[i]);
    c.r.push_back(lower.r[i]);
    c.V.push_back(lower.V[i]);
    c.alpha.push_back(lower.alpha[i]);
    c.dr.push_back(lower.dr[i]);
    c.dV.push_back(lower.dV[i]);
    c.dalpha.push_back(lower.dalpha[i]);
  }
  return c;
}

GraphProfile graph_view(const ProfileCurve& c, double r_lo) {
  constexpr double half_pi = 1.5707963267948966;
  GraphProfile g;
  g.n = c.n;
  double prev = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < c.size(); ++i) {
    if (c.r[i] < r_lo) continue;
    if (std::fabs(c.alpha[i]) >= half_pi - 1e-9)
      throw DomainError("graph_view: vertical tangent inside requested range");
    if (c.r[i] <= prev)
      throw DomainError("graph_view: radius not strictly increasing in requested range");
    prev = c.r[i];
    g.r_grid.push_back(c.r[i]);
    g.V.push_back(c.V[i]);
    g.phi.push_back(std::tan(c.alpha[i]));
  }
  if (g.r_grid.size() < 2)
    throw DomainError("graph_view: fewer than two samples at or above r_lo");
  return g;
}

namespace {

inline double graph_phi_slope(int n, double r, double phi) {
  return (1.0 + phi * phi) * (1.0 - (n - 1) * phi / r);
}

size_t graph_segment(const std::vector<double>& grid, double r) {
  if (r < grid.front() - 1e-12 || r > grid.back() + 1e-12)
    throw DomainError("graph: radius outside grid range");
  auto it = std::upper_bound(grid.begin(), grid.end(), r);
  size_t i = (it == grid.begin()) ? 0 : static_cast<size_t>(it - grid.begin()) - 1;
  if (i + 1 >= grid.size()) i = grid.size() - 2;
  return i;
}

} // namespace

double GraphProfile::V_at(double r) const {
  const size_t i = graph_segment(r_grid, r);
  const double h = r_grid[i + 1] - r_grid[i];
  const double t = std::clamp((r - r_grid[i]) / h, 0.0, 1.0);
  return hermite(t, h, V[i], phi[i], V[i + 1], phi[i + 1]);
}

double GraphProfile::phi_at(double r) const {
  const size_t i = graph_segment(r_grid, r);
  const double h = r_grid[i + 1] - r_grid[i];
  const double t = std::clamp((r - r_grid[i]) / h, 0.0, 1.0);
  return hermite(t, h, phi[i], graph_phi_slope(n, r_grid[i], phi[i]), phi[i + 1],
                 graph_phi_slope(n, r_grid[i + 1], phi[i + 1]));
}

double GraphProfile::dphi_at(double r) const {
  return graph_phi_slope(n, r, phi_at(r));
}

double translator_residual(const ProfileCurve& c) {
  const size_t N = c.size();
  if (N < 3) throw DomainError("residual: need at least three samples");
  const int W = static_cast<int>(std::min<size_t>(5, N));
  double worst = 0.0;
  std::vector<double> w(static_cast<size_t>(W));
  for (size_t i = 1; i + 1 < N; ++i) {
    size_t lo = (i >= 2) ? i - 2 : 0;
    if (lo + static_cast<size_t>(W) > N) lo = N - static_cast<size_t>(W);
    fd_weights_first(&c.s[lo], W, c.s[i], w.data());
    double Dr = 0.0, DV = 0.0, Da = 0.0;
    for (int j = 0; j < W; ++j) {
      Dr += w[static_cast<size_t>(j)] * c.r[lo + static_cast<size_t>(j)];
      DV += w[static_cast<size_t>(j)] * c.V[lo + static_cast<size_t>(j)];
      Da += w[static_cast<size_t>(j)] * c.alpha[lo + static_cast<size_t>(j)];
    }
    const double ca = std::cos(c.alpha[i]), sa = std::sin(c.alpha[i]);
    const double res = std::max({std::fabs(Dr - ca), std::fabs(DV - sa),
                                 std::fabs(Da + (c.n - 1) * sa / c.r[i] - ca)});
    worst = std::max(worst, res);
  }
  return worst;
}

} // namespace tsol
