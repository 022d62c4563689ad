#include "tsol/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace tsol {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSlack = 1e-7; // discretization slack accepted by inequality reports
constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

const char* bound_name(BoundId id) {
  switch (id) {
    case BoundId::PHI_ENVELOPE: return "PHI_ENVELOPE";
    case BoundId::PHI_MONOTONE: return "PHI_MONOTONE";
    case BoundId::MONOTONICITY_IDENTITY: return "MONOTONICITY_IDENTITY";
    case BoundId::CAUCHY_SCHWARZ: return "CAUCHY_SCHWARZ";
    case BoundId::FIRST_LOWER: return "FIRST_LOWER";
    case BoundId::BETA_LOG_LOWER: return "BETA_LOG_LOWER";
    case BoundId::REFINED_LOWER: return "REFINED_LOWER";
    case BoundId::V_QUADRATIC_LOWER: return "V_QUADRATIC_LOWER";
    case BoundId::V_LOG_LOWER: return "V_LOG_LOWER";
    case BoundId::SUP_RATIO: return "SUP_RATIO";
    case BoundId::UPPER_BRANCH_HEIGHT: return "UPPER_BRANCH_HEIGHT";
    case BoundId::UPPER_BRANCH_RADIUS: return "UPPER_BRANCH_RADIUS";
    case BoundId::R_STAR_WINDOW: return "R_STAR_WINDOW";
    case BoundId::DEPTH_BOUND: return "DEPTH_BOUND";
    case BoundId::SLOPE_LIMIT: return "SLOPE_LIMIT";
    case BoundId::FUNNEL_CONTAINMENT: return "FUNNEL_CONTAINMENT";
  }
  return "UNKNOWN";
}

BoundId bound_from_name(const std::string& name) {
  for (BoundId id : all_bound_ids)
    if (name == bound_name(id)) return id;
  if (name == bound_name(BoundId::FUNNEL_CONTAINMENT)) return BoundId::FUNNEL_CONTAINMENT;
  throw DomainError("unknown bound id: " + name);
}

double alpha_coefficient(int n) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  return 1.0 - 1.0 / std::sqrt(2.0 * (n - 1));
}

namespace {

double hermite_scalar(double x0, double y0, double m0, double x1, double y1, double m1,
                      double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * m1;
}

// Branch graph with the gap between the exact turning point and the first
// retained sample bridged by one Hermite segment. At the turning point
// phi = 0 with slope 1 and V has slope phi = 0.
struct BranchGraph {
  const GraphProfile* g = nullptr;
  double turn_r = 0.0;
  double turn_V = 0.0;

  double phi(double r) const {
    if (r >= g->r_lo()) return g->phi_at(r);
    if (r <= turn_r) return 0.0;
    return hermite_scalar(turn_r, 0.0, 1.0, g->r_lo(), g->phi.front(),
                          g->dphi_at(g->r_lo()), r);
  }
  double V(double r) const {
    if (r >= g->r_lo()) return g->V_at(r);
    if (r <= turn_r) return turn_V;
    return hermite_scalar(turn_r, turn_V, 0.0, g->r_lo(), g->V.front(),
                          g->phi.front(), r);
  }
};

double simpson_slice(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double fm, double tol, int depth,
                     double whole) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_slice(f, a, fa, m, fm, flm, 0.5 * tol, depth - 1, left) +
         simpson_slice(f, m, fm, b, fb, frm, 0.5 * tol, depth - 1, right);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return simpson_slice(f, a, fa, b, fb, fm, tol, 40, whole);
}

struct MarginAccum {
  double min_margin = kInf;
  double worst_r = 0.0;
  int points = 0;

  void add(double r, double m) {
    ++points;
    if (m < min_margin) {
      min_margin = m;
      worst_r = r;
    }
  }
};

BoundReport make_report(BoundId id, double r_lo, double r_hi, const MarginAccum& acc,
                        double tolerance, std::string note = {}) {
  BoundReport rep;
  rep.bound = id;
  rep.r_lo = r_lo;
  rep.r_hi = r_hi;
  rep.grid_size = acc.points;
  rep.min_margin = acc.points ? acc.min_margin : 0.0;
  rep.worst_r = acc.worst_r;
  rep.tolerance = tolerance;
  rep.pass = rep.min_margin >= -tolerance;
  rep.note = std::move(note);
  return rep;
}

std::vector<double> uniform_grid(double lo, double hi, int grid) {
  std::vector<double> r(static_cast<size_t>(grid));
  for (int k = 0; k < grid; ++k)
    r[static_cast<size_t>(k)] = lo + (hi - lo) * k / (grid - 1);
  return r;
}

// Residual of the integral representation
//   phi(r) = int_{t0}^{r} exp(-(n-1)(J(r) - J(t))) (1 + phi(t)^2) dt,
//   J(x) = int_{t0}^{x} (1 + phi^2)/s ds,
// at one radius, by composite trapezoid with node count chosen from a pilot
// pass so the quadrature error tracks quad_tol.
double identity_residual(const BranchGraph& bg, int n, double re, double quad_tol,
                         int* nodes_used) {
  const double t0 = bg.turn_r;
  const double len = re - t0;
  auto phi_sq1 = [&](double t) {
    const double p = bg.phi(t);
    return 1.0 + p * p;
  };
  // J integrand; at a zero turning radius the weight of the first node is 0
  // and its J value is never used.
  auto j_rate = [&](double t) { return phi_sq1(t) / t; };

  auto evaluate = [&](int N, double* curvature_max) -> double {
    const double h = len / N;
    std::vector<double> J(static_cast<size_t>(N) + 1, 0.0);
    std::vector<double> F(static_cast<size_t>(N) + 1, 0.0);
    double rate_prev = t0 > 0.0 ? j_rate(t0) : 0.0;
    for (int j = 1; j <= N; ++j) {
      const double t = t0 + h * j;
      const double rate = j_rate(t);
      if (j == 1 && t0 <= 0.0)
        J[1] = 0.0; // base shifted to the first node; only differences matter
      else
        J[static_cast<size_t>(j)] = J[static_cast<size_t>(j) - 1] + 0.5 * h * (rate_prev + rate);
      rate_prev = rate;
    }
    const double Jr = J[static_cast<size_t>(N)];
    for (int j = 0; j <= N; ++j) {
      if (j == 0 && t0 <= 0.0) {
        F[0] = 0.0; // weight vanishes at the axis
        continue;
      }
      const double t = t0 + h * j;
      F[static_cast<size_t>(j)] =
          std::exp(-(n - 1) * (Jr - J[static_cast<size_t>(j)])) * phi_sq1(t);
    }
    double sum = 0.5 * (F[0] + F[static_cast<size_t>(N)]);
    for (int j = 1; j < N; ++j) sum += F[static_cast<size_t>(j)];
    if (curvature_max) {
      double c = 0.0;
      for (int j = 1; j < N; ++j)
        c = std::max(c, std::abs(F[static_cast<size_t>(j) + 1] - 2 * F[static_cast<size_t>(j)] +
                                 F[static_cast<size_t>(j) - 1]) /
                            (h * h));
      *curvature_max = c;
    }
    return sum * h;
  };

  double curvature = 0.0;
  evaluate(512, &curvature);
  // Composite trapezoid error is len h^2 max|F''| / 12; solve for N.
  double N_real = std::sqrt(len * len * len * std::max(curvature, 1e-12) / (12.0 * 0.5 * quad_tol));
  const int N = static_cast<int>(std::min(std::max(N_real, 64.0), 4.0e6)) + 1;
  const double integral = evaluate(N, nullptr);
  if (nodes_used) *nodes_used = N;
  return std::abs(bg.phi(re) - integral);
}

BoundReport check_graph_bound(const BranchGraph& bg, int n, BoundId id, double req_lo,
                              double req_hi, int grid, double quad_tol) {
  const GraphProfile& g = *bg.g;
  if (grid < 2) throw DomainError("bound grid needs at least two points");
  if (req_hi > g.r_hi() * (1 + 1e-12) + 1e-12)
    throw DomainError("bound range exceeds the computed extent");
  if (req_lo < bg.turn_r - 1e-12 * (1.0 + std::abs(bg.turn_r)))
    throw DomainError("bound range starts below the turning radius");
  const double lo = std::max(req_lo, bg.turn_r);
  const double hi = std::min(req_hi, g.r_hi());
  if (!(hi > lo)) throw DomainError("empty bound range");
  const double alpha_n = alpha_coefficient(n);
  const double R_star = bg.turn_r;

  switch (id) {
    case BoundId::PHI_ENVELOPE: {
      MarginAccum acc;
      const auto r = uniform_grid(lo, hi, grid);
      const double phi0 = bg.phi(lo);
      for (double rk : r) {
        const double p = bg.phi(rk);
        acc.add(rk, std::min(p - phi0, rk / (n - 1) - p));
      }
      return make_report(id, lo, hi, acc, kSlack);
    }
    case BoundId::PHI_MONOTONE: {
      MarginAccum acc;
      const auto r = uniform_grid(lo, hi, grid);
      double prev = bg.phi(r[0]);
      for (size_t k = 1; k < r.size(); ++k) {
        const double p = bg.phi(r[k]);
        acc.add(r[k], p - prev);
        prev = p;
      }
      return make_report(id, lo, hi, acc, kSlack);
    }
    case BoundId::MONOTONICITY_IDENTITY: {
      MarginAccum acc;
      const double span = std::min(hi, lo + 6.0) - lo;
      int max_nodes = 0;
      for (int j = 1; j <= 8; ++j) {
        const double re = lo + span * j / 8.0;
        int nodes = 0;
        const double res = identity_residual(bg, n, re, quad_tol, &nodes);
        max_nodes = std::max(max_nodes, nodes);
        acc.add(re, -res);
      }
      auto rep = make_report(id, lo, lo + span, acc, 100.0 * quad_tol,
                             "residual form; quadrature nodes " + std::to_string(max_nodes));
      return rep;
    }
    case BoundId::CAUCHY_SCHWARZ: {
      MarginAccum acc;
      const auto r = uniform_grid(lo, hi, grid);
      auto f = [&](double t) {
        const double p = bg.phi(t);
        return t / (1.0 + p * p);
      };
      const double total = hi - R_star;
      double I = adaptive_simpson(f, R_star, r[0], quad_tol * (r[0] - R_star) / total);
      for (size_t k = 0; k < r.size(); ++k) {
        if (k > 0)
          I += adaptive_simpson(f, r[k - 1], r[k], quad_tol * (r[k] - r[k - 1]) / total);
        const double bound =
            (r[k] - R_star) / (n - 1) - std::sqrt(0.5 * (n - 1)) * std::sqrt(std::max(I, 0.0));
        acc.add(r[k], bg.phi(r[k]) - bound);
      }
      return make_report(id, lo, hi, acc, kSlack);
    }
    case BoundId::FIRST_LOWER: {
      MarginAccum acc;
      for (double rk : uniform_grid(lo, hi, grid))
        acc.add(rk, bg.phi(rk) - alpha_n * (rk - R_star) / (n - 1));
      return make_report(id, lo, hi, acc, kSlack);
    }
    case BoundId::BETA_LOG_LOWER: {
      MarginAccum acc;
      const double beta = alpha_n / (n - 1);
      for (double rk : uniform_grid(lo, hi, grid)) {
        const double s = rk - R_star;
        const double inner =
            std::log1p(beta * beta * s * s) / (2.0 * beta * beta) + kPi * R_star / (2.0 * beta);
        const double bound = s / (n - 1) - std::sqrt(0.5 * (n - 1)) * std::sqrt(inner);
        acc.add(rk, bg.phi(rk) - bound);
      }
      return make_report(id, lo, hi, acc, kSlack);
    }
    case BoundId::REFINED_LOWER: {
      MarginAccum acc;
      const double cut = std::max(R_star, 1.0);
      for (double rk : uniform_grid(lo, hi, grid)) {
        if (rk < cut) continue;
        acc.add(rk, bg.phi(rk) - ((rk - 4.0 * R_star) / (n - 1) - 24.0 / rk));
      }
      return make_report(id, std::max(lo, cut), hi, acc, kSlack,
                         acc.points ? std::string{} : "restricted range is empty");
    }
    case BoundId::V_QUADRATIC_LOWER: {
      MarginAccum acc;
      for (double rk : uniform_grid(lo, hi, grid)) {
        const double s = rk - R_star;
        acc.add(rk, (bg.V(rk) - bg.turn_V) - alpha_n * s * s / (2.0 * (n - 1)));
      }
      return make_report(id, lo, hi, acc, kSlack);
    }
    case BoundId::V_LOG_LOWER: {
      if (R_star <= 0.0) {
        MarginAccum acc;
        return make_report(id, lo, hi, acc, kSlack, "log term undefined at zero turning radius");
      }
      MarginAccum acc;
      for (double rk : uniform_grid(lo, hi, grid)) {
        const double s = rk - R_star;
        const double bound = s * s / (2.0 * (n - 1)) - 24.0 * std::log(rk / R_star) -
                             9.0 * R_star * R_star / (2.0 * (n - 1));
        acc.add(rk, (bg.V(rk) - bg.turn_V) - bound);
      }
      return make_report(id, lo, hi, acc, kSlack);
    }
    case BoundId::SUP_RATIO: {
      MarginAccum acc;
      double worst = -kInf, worst_r = lo;
      int points = 0;
      for (double rk : uniform_grid(lo, hi, grid)) {
        const double p = bg.phi(rk);
        const double ratio = rk / (1.0 + p * p);
        ++points;
        if (ratio > worst) {
          worst = ratio;
          worst_r = rk;
        }
      }
      // Cap from maximizing r/(1 + alpha_n^2 (r-R*)^2/(n-1)^2), the sharp
      // consequence of FIRST_LOWER; it is attained at R* = 0.
      const double cap = R_star + (n - 1) / (2.0 * alpha_coefficient(n));
      acc.min_margin = cap - worst;
      acc.worst_r = worst_r;
      acc.points = points;
      return make_report(id, lo, hi, acc, kSlack);
    }
    case BoundId::SLOPE_LIMIT: {
      MarginAccum acc;
      const double cut = 10.0 * R_star;
      for (double rk : uniform_grid(lo, hi, grid)) {
        if (rk < cut) continue;
        const double lhs = std::abs((n - 1) * bg.phi(rk) / rk - 1.0);
        acc.add(rk, 2.0 * (n - 1) / (rk * rk) - lhs);
      }
      return make_report(id, std::max(lo, cut), hi, acc, kSlack,
                         acc.points ? std::string{} : "restricted range is empty");
    }
    default:
      throw DomainError(std::string("bound ") + bound_name(id) +
                        " requires a full wing solution");
  }
}

// Worst margin over branch samples in range plus a uniform arc-length
// refinement; f maps a curve point (r, V, alpha) to the signed margin.
template <typename F>
MarginAccum curve_margin(const ProfileCurve& c, double r_lo, double r_hi, int grid,
                         F&& f) {
  MarginAccum acc;
  for (size_t i = 0; i < c.size(); ++i)
    if (c.r[i] >= r_lo && c.r[i] <= r_hi) acc.add(c.r[i], f(c.r[i], c.V[i], c.alpha[i]));
  for (int k = 0; k < grid; ++k) {
    const double s = c.s_front() + (c.s_back() - c.s_front()) * (k + 0.5) / grid;
    const auto y = c.at(s);
    if (y[0] >= r_lo && y[0] <= r_hi) acc.add(y[0], f(y[0], y[1], y[2]));
  }
  return acc;
}

} // namespace

BoundReport check_bound(const GraphProfile& g, double turn_r, double turn_V, BoundId id,
                        double r_lo, double r_hi, int grid, double quad_tol) {
  BranchGraph bg{&g, turn_r, turn_V};
  return check_graph_bound(bg, g.n, id, r_lo, r_hi, grid, quad_tol);
}

BoundReport check_bound(const WingSolution& w, BoundId id, double r_lo, double r_hi,
                        int grid, double quad_tol) {
  const int n = w.n;
  switch (id) {
    case BoundId::R_STAR_WINDOW: {
      MarginAccum acc;
      acc.add(w.R_star, (w.R + kPi / 2.0) - w.R_star);
      return make_report(id, w.R, w.R_star, acc, kSlack);
    }
    case BoundId::DEPTH_BOUND: {
      MarginAccum acc;
      acc.add(w.R_star, (kPi / 2.0) * w.R_star / (n - 1) - w.depth);
      return make_report(id, w.R, w.R_star, acc, kSlack);
    }
    case BoundId::UPPER_BRANCH_HEIGHT: {
      if (r_hi > w.upper.r_extent() * (1 + 1e-12))
        throw DomainError("bound range exceeds the upper branch extent");
      auto acc = curve_margin(w.upper, std::max(r_lo, w.R), r_hi, grid,
                              [&](double r, double V, double) {
                                return (r * r - w.R * w.R) / (2.0 * (n - 1)) + 1.0 - V;
                              });
      return make_report(id, std::max(r_lo, w.R), r_hi, acc, kSlack);
    }
    case BoundId::UPPER_BRANCH_RADIUS: {
      if (r_hi > w.upper.r_extent() * (1 + 1e-12))
        throw DomainError("bound range exceeds the upper branch extent");
      // Radius floor from integrating (r^2)' >= 2(n-1)(1 - e^-x) in height,
      // and the slope sign r'(x) >= 0 folded in as cos(alpha).
      auto acc = curve_margin(w.upper, std::max(r_lo, w.R), r_hi, grid,
                              [&](double r, double V, double alpha) {
                                const double floor2 =
                                    2.0 * (n - 1) * (V - 1.0 + std::exp(-V)) + w.R * w.R;
                                const double m = r - std::sqrt(std::max(floor2, 0.0));
                                return std::min(m, std::cos(alpha));
                              });
      return make_report(id, std::max(r_lo, w.R), r_hi, acc, kSlack);
    }
    default: {
      GraphProfile g = graph_view(w.lower, w.R_star);
      BranchGraph bg{&g, w.R_star, -w.depth};
      return check_graph_bound(bg, n, id, std::max(r_lo, w.R_star), r_hi, grid, quad_tol);
    }
  }
}

std::vector<BoundReport> check_all(const WingSolution& w, double r_max, double quad_tol,
                                   int grid) {
  std::vector<BoundReport> out;
  out.reserve(all_bound_ids.size());
  for (BoundId id : all_bound_ids) {
    const bool upper = id == BoundId::UPPER_BRANCH_HEIGHT || id == BoundId::UPPER_BRANCH_RADIUS;
    const double lo = upper ? w.R : w.R_star;
    try {
      out.push_back(check_bound(w, id, lo, r_max, grid, quad_tol));
    } catch (const std::exception& e) {
      BoundReport rep;
      rep.bound = id;
      rep.r_lo = lo;
      rep.r_hi = r_max;
      rep.min_margin = -kInf;
      rep.tolerance = kSlack;
      rep.pass = false;
      rep.note = e.what();
      out.push_back(std::move(rep));
    }
  }
  return out;
}

} // namespace tsol
