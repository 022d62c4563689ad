#include "tsol/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace tsol {

namespace {

struct Ols {
  double intercept = 0.0, slope = 0.0;
};

// Ordinary least squares y = intercept + slope * x.
Ols ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    Sx += x[i];
    Sy += y[i];
    Sxx += x[i] * x[i];
    Sxy += x[i] * y[i];
  }
  const double det = m * Sxx - Sx * Sx;
  if (det == 0.0) throw FitError("degenerate regressor in the fit window");
  Ols f;
  f.slope = (m * Sxy - Sx * Sy) / det;
  f.intercept = (Sy - f.slope * Sx) / m;
  return f;
}

} // namespace

AsymptoticFit fit_height_model(int n, const std::vector<double>& r,
                               const std::vector<double>& V, double window_lo,
                               double window_hi) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  if (r.size() != V.size()) throw DomainError("mismatched sample arrays");
  if (!(window_lo > 0.0)) throw FitError("window must have a positive lower end");
  if (!(window_hi >= 2.0 * window_lo))
    throw FitError("window must span at least one octave");

  std::vector<double> rr, cc;
  for (size_t i = 0; i < r.size(); ++i) {
    if (r[i] < window_lo || r[i] > window_hi) continue;
    rr.push_back(r[i]);
    cc.push_back(V[i] - r[i] * r[i] / (2.0 * (n - 1)) + std::log(r[i]));
  }
  if (rr.size() < 16) throw FitError("too few samples in the fit window");

  std::vector<double> inv(rr.size());
  for (size_t i = 0; i < rr.size(); ++i) inv[i] = 1.0 / rr[i];
  const Ols model = ols_fit(inv, cc);

  AsymptoticFit fit;
  fit.C = model.intercept;
  fit.K = model.slope;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.nodes = static_cast<int>(rr.size());
  for (size_t i = 0; i < rr.size(); ++i)
    fit.max_residual = std::max(fit.max_residual, std::abs(cc[i] - fit.C - fit.K * inv[i]));

  // Decay exponent of the remainder C_est - C on log-log axes.
  std::vector<double> lx, ly;
  for (size_t i = 0; i < rr.size(); ++i) {
    const double rem = std::abs(cc[i] - fit.C);
    if (rem < 1e-13) continue;
    lx.push_back(std::log(rr[i]));
    ly.push_back(std::log(rem));
  }
  fit.slope = lx.size() >= 4 ? ols_fit(lx, ly).slope : 0.0;

  const double mismatch_scale = 0.02 * (1.0 + std::abs(fit.C) + std::abs(fit.K) / window_lo);
  fit.model_mismatch = fit.max_residual > mismatch_scale;
  return fit;
}

AsymptoticFit estimate_constant(const GraphProfile& g, double window_lo,
                                double window_hi, int nodes) {
  if (nodes < 16) throw FitError("fit needs at least 16 nodes");
  if (window_lo < g.r_lo() || window_hi > g.r_hi())
    throw FitError("fit window outside the profile extent");
  std::vector<double> r(static_cast<size_t>(nodes)), V(static_cast<size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    r[static_cast<size_t>(j)] = window_lo + (window_hi - window_lo) * j / (nodes - 1);
    V[static_cast<size_t>(j)] = g.V_at(r[static_cast<size_t>(j)]);
  }
  return fit_height_model(g.n, r, V, window_lo, window_hi);
}

std::vector<std::pair<double, double>> constant_samples(const GraphProfile& g,
                                                        double window_lo,
                                                        double window_hi, int nodes) {
  if (nodes < 2) throw FitError("need at least two sample nodes");
  if (window_lo < g.r_lo() || window_hi > g.r_hi())
    throw FitError("sample window outside the profile extent");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    const double r = window_lo + (window_hi - window_lo) * j / (nodes - 1);
    out.emplace_back(r, g.V_at(r) - r * r / (2.0 * (g.n - 1)) + std::log(r));
  }
  return out;
}

EndSeparation end_separation(const WingSolution& w, double window_lo,
                             double window_hi, int nodes) {
  const double min_lo = 10.0 * (w.R_star + 1.0);
  if (window_lo < min_lo)
    throw FitError("fit window must start beyond ten turning radii");
  // Skip the exact vertical-tangent sample at the waist of the upper branch.
  GraphProfile upper = graph_view(w.upper, w.R + 1e-12 * (1.0 + w.R));
  GraphProfile lower = graph_view(w.lower, w.R_star);
  EndSeparation sep;
  sep.plus = estimate_constant(upper, window_lo, window_hi, nodes);
  sep.minus = estimate_constant(lower, window_lo, window_hi, nodes);
  sep.delta = sep.plus.C - sep.minus.C;
  return sep;
}

} // namespace tsol
