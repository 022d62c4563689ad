#include "tsol/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

namespace tsol {

namespace {

constexpr double kSubsampleSpacing = 0.005;

double lerp(double a, double b, double t) { return a + (b - a) * t; }

} // namespace

void ObstacleProfile::validate() const {
  if (r.empty()) throw DomainError("obstacle polyline is empty");
  if (r.size() != x.size()) throw DomainError("obstacle coordinate arrays differ in length");
  for (size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(x[i]))
      throw DomainError("obstacle polyline has a non-finite vertex");
    if (r[i] < 0.0) throw DomainError("obstacle polyline has a negative radius");
  }
}

ObstacleProfile read_obstacle_csv(std::istream& in) {
  ObstacleProfile o;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b)) {
      if (first) {
        first = false;
        continue; // header
      }
      throw DomainError("malformed obstacle row: " + line);
    }
    char* end_a = nullptr;
    char* end_b = nullptr;
    const double rv = std::strtod(a.c_str(), &end_a);
    const double xv = std::strtod(b.c_str(), &end_b);
    const bool a_ok = end_a != a.c_str();
    const bool b_ok = end_b != b.c_str();
    if (!a_ok || !b_ok) {
      if (first) {
        first = false;
        continue; // header row such as "r,x"
      }
      throw DomainError("malformed obstacle row: " + line);
    }
    first = false;
    o.r.push_back(rv);
    o.x.push_back(xv);
  }
  o.validate();
  return o;
}

ObstacleProfile obstacle_from_curve(const ProfileCurve& curve, double spacing) {
  if (!(spacing > 0.0)) throw DomainError("sample spacing must be positive");
  ObstacleProfile o;
  const double s0 = curve.s_front(), s1 = curve.s_back();
  const int m = std::max(1, static_cast<int>(std::ceil((s1 - s0) / spacing)));
  for (int j = 0; j <= m; ++j) {
    const auto y = curve.at(s0 + (s1 - s0) * j / m);
    o.r.push_back(y[0]);
    o.x.push_back(y[1]);
  }
  o.validate();
  return o;
}

namespace {

struct Vec2 {
  double r, x;
};

double cross(Vec2 a, Vec2 b) { return a.r * b.x - a.x * b.r; }
double dot(Vec2 a, Vec2 b) { return a.r * b.r + a.x * b.x; }
Vec2 sub(Vec2 a, Vec2 b) { return {a.r - b.r, a.x - b.x}; }
double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

Vec2 closest_on_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = sub(b, a);
  const double len2 = dot(d, d);
  double t = len2 > 0.0 ? dot(sub(p, a), d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return {a.r + t * d.r, a.x + t * d.x};
}

// Minimum distance between two segments with a witness point near the middle
// of the closest approach; also reports transversal crossing.
struct SegDist {
  double dist;
  Vec2 witness;
  bool collinear_overlap;
};

SegDist segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  const Vec2 da = sub(a1, a0), db = sub(b1, b0), ab = sub(b0, a0);
  const double denom = cross(da, db);
  const double scale = std::max({norm(da), norm(db), 1e-30});
  SegDist out{std::numeric_limits<double>::infinity(), {0, 0}, false};
  if (std::abs(denom) > 1e-14 * scale * scale) {
    const double t = cross(ab, db) / denom;
    const double u = cross(ab, da) / denom;
    if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) {
      out.dist = 0.0;
      out.witness = {a0.r + t * da.r, a0.x + t * da.x};
      return out;
    }
  } else if (std::abs(cross(ab, da)) <= 1e-12 * scale * std::max(norm(ab), scale)) {
    // Collinear: overlap when the projections intersect in a full interval.
    const double len2 = dot(da, da);
    if (len2 > 0.0) {
      double t0 = dot(sub(b0, a0), da) / len2;
      double t1 = dot(sub(b1, a0), da) / len2;
      if (t0 > t1) std::swap(t0, t1);
      const double lo = std::max(t0, 0.0), hi = std::min(t1, 1.0);
      if (hi - lo > 1e-12) {
        out.collinear_overlap = true;
        const double tm = 0.5 * (lo + hi);
        out.dist = 0.0;
        out.witness = {a0.r + tm * da.r, a0.x + tm * da.x};
        return out;
      }
    }
  }
  // Endpoint-to-segment candidates.
  const Vec2 cands[4][2] = {{a0, closest_on_segment(a0, b0, b1)},
                            {a1, closest_on_segment(a1, b0, b1)},
                            {b0, closest_on_segment(b0, a0, a1)},
                            {b1, closest_on_segment(b1, a0, a1)}};
  for (const auto& c : cands) {
    const double d = norm(sub(c[0], c[1]));
    if (d < out.dist) {
      out.dist = d;
      out.witness = {0.5 * (c[0].r + c[1].r), 0.5 * (c[0].x + c[1].x)};
    }
  }
  return out;
}

} // namespace

IntersectionSet intersect(const ObstacleProfile& a, const ObstacleProfile& b, double tol) {
  a.validate();
  b.validate();
  IntersectionSet set;
  const size_t na = a.size(), nb = b.size();
  auto push_point = [&](Vec2 p) {
    const double merge = std::max(tol, 1e-12) * 4.0;
    for (const auto& q : set.points)
      if (std::hypot(q[0] - p.r, q[1] - p.x) <= merge) return;
    set.points.push_back({p.r, p.x});
  };
  if (na == 1 && nb == 1) {
    if (std::hypot(a.r[0] - b.r[0], a.x[0] - b.x[0]) <= tol) push_point({a.r[0], a.x[0]});
    return set;
  }
  // Degenerate single-vertex polylines become zero-length segments.
  const size_t sa = na > 1 ? na - 1 : 1;
  const size_t sb = nb > 1 ? nb - 1 : 1;
  for (size_t i = 0; i < sa; ++i) {
    const Vec2 a0{a.r[i], a.x[i]};
    const Vec2 a1 = na > 1 ? Vec2{a.r[i + 1], a.x[i + 1]} : a0;
    const double a_rlo = std::min(a0.r, a1.r) - tol, a_rhi = std::max(a0.r, a1.r) + tol;
    const double a_xlo = std::min(a0.x, a1.x) - tol, a_xhi = std::max(a0.x, a1.x) + tol;
    for (size_t j = 0; j < sb; ++j) {
      const Vec2 b0{b.r[j], b.x[j]};
      const Vec2 b1 = nb > 1 ? Vec2{b.r[j + 1], b.x[j + 1]} : b0;
      if (std::max(b0.r, b1.r) < a_rlo || std::min(b0.r, b1.r) > a_rhi ||
          std::max(b0.x, b1.x) < a_xlo || std::min(b0.x, b1.x) > a_xhi)
        continue;
      const SegDist sd = segment_distance(a0, a1, b0, b1);
      if (sd.collinear_overlap) set.overlapping = true;
      if (sd.dist <= tol) push_point(sd.witness);
    }
  }
  return set;
}

namespace {

// Height of a branch at a given radius. Each branch is strictly increasing in
// r, so the meridian is a graph over radius; evaluation inverts the Hermite
// segment containing r.
struct BranchHeight {
  const ProfileCurve* c;

  double r_front() const { return c->r.front(); }
  double r_back() const { return c->r.back(); }

  double height(double r) const {
    const auto& cr = c->r;
    if (r <= cr.front()) return c->V.front();
    if (r >= cr.back()) return c->V.back();
    size_t i = static_cast<size_t>(std::upper_bound(cr.begin(), cr.end(), r) - cr.begin());
    if (i > 0) --i;
    if (i + 1 >= cr.size()) i = cr.size() - 2;
    double lo = c->s[i], hi = c->s[i + 1];
    // r(s) is nondecreasing on the segment; bisect to the requested radius.
    for (int it = 0; it < 64 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (c->at(mid)[0] < r)
        lo = mid;
      else
        hi = mid;
    }
    return c->at(0.5 * (lo + hi))[1];
  }
};

struct CurveGraphs {
  BranchHeight upper, lower;
  double r_waist;
  double r_limit; // computed extent usable for the predicate

  bool defined(double r) const { return r >= r_waist && r <= r_limit; }
};

// Crossing scan of one obstacle against upper/lower height functions.
bool graphs_intersect(const CurveGraphs& g, const ObstacleProfile& obstacle,
                      double tol_geom, std::array<double, 2>* touch) {
  const double waist_x = 0.0;
  const size_t nseg = obstacle.size() > 1 ? obstacle.size() - 1 : 1;
  for (size_t i = 0; i < nseg; ++i) {
    const double r0 = obstacle.r[i], x0 = obstacle.x[i];
    const double r1 = obstacle.size() > 1 ? obstacle.r[i + 1] : r0;
    const double x1 = obstacle.size() > 1 ? obstacle.x[i + 1] : x0;
    const double len = std::hypot(r1 - r0, x1 - x0);
    const int m = std::min(20000, std::max(1, static_cast<int>(std::ceil(len / kSubsampleSpacing))));

    // Near-touch at the waist point, where the two height graphs join.
    {
      const Vec2 w{g.r_waist, waist_x};
      const Vec2 cp = closest_on_segment(w, {r0, x0}, {r1, x1});
      if (norm(sub(w, cp)) <= tol_geom) {
        if (touch) *touch = {g.r_waist, waist_x};
        return true;
      }
    }

    bool have_prev = false;
    double gU_prev = 0.0, gL_prev = 0.0, t_prev = 0.0;
    for (int j = 0; j <= m; ++j) {
      const double t = static_cast<double>(j) / m;
      const double r = lerp(r0, r1, t);
      const double x = lerp(x0, x1, t);
      if (!g.defined(r)) {
        have_prev = false;
        continue;
      }
      const double gU = x - g.upper.height(r);
      const double gL = x - g.lower.height(r);
      if (std::abs(gU) <= tol_geom || std::abs(gL) <= tol_geom) {
        if (touch) *touch = {r, x};
        return true;
      }
      if (have_prev) {
        for (int which = 0; which < 2; ++which) {
          const double gp = which == 0 ? gU_prev : gL_prev;
          const double gc = which == 0 ? gU : gL;
          if (gp * gc < 0.0) {
            // Refine the crossing parameter; radius varies linearly in t.
            double lo = t_prev, hi = t;
            for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
              const double mid = 0.5 * (lo + hi);
              const double rm = lerp(r0, r1, mid);
              const double xm = lerp(x0, x1, mid);
              const double gm = which == 0 ? xm - g.upper.height(rm) : xm - g.lower.height(rm);
              if ((gm < 0.0) == (gp < 0.0))
                lo = mid;
              else
                hi = mid;
            }
            if (touch) {
              const double tm = 0.5 * (lo + hi);
              *touch = {lerp(r0, r1, tm), lerp(x0, x1, tm)};
            }
            return true;
          }
        }
      }
      have_prev = true;
      gU_prev = gU;
      gL_prev = gL;
      t_prev = t;
    }
  }
  return false;
}

} // namespace

bool wing_intersects(const WingSolution& w, const ObstacleProfile& obstacle,
                     double tol_geom, std::array<double, 2>* touch) {
  obstacle.validate();
  CurveGraphs g{{&w.upper}, {&w.lower}, w.R,
                std::min(w.upper.r_extent(), w.lower.r_extent())};
  return graphs_intersect(g, obstacle, tol_geom, touch);
}

bool bowl_intersects(const GraphProfile& bowl, const ObstacleProfile& obstacle,
                     double tol_geom, std::array<double, 2>* touch) {
  obstacle.validate();
  const size_t nseg = obstacle.size() > 1 ? obstacle.size() - 1 : 1;
  for (size_t i = 0; i < nseg; ++i) {
    const double r0 = obstacle.r[i], x0 = obstacle.x[i];
    const double r1 = obstacle.size() > 1 ? obstacle.r[i + 1] : r0;
    const double x1 = obstacle.size() > 1 ? obstacle.x[i + 1] : x0;
    const double len = std::hypot(r1 - r0, x1 - x0);
    const int m = std::min(20000, std::max(1, static_cast<int>(std::ceil(len / kSubsampleSpacing))));
    bool have_prev = false;
    double g_prev = 0.0, t_prev = 0.0;
    for (int j = 0; j <= m; ++j) {
      const double t = static_cast<double>(j) / m;
      const double r = lerp(r0, r1, t);
      const double x = lerp(x0, x1, t);
      if (r > bowl.r_hi()) {
        have_prev = false;
        continue;
      }
      const double gap = x - bowl.V_at(std::max(r, bowl.r_lo()));
      if (std::abs(gap) <= tol_geom) {
        if (touch) *touch = {r, x};
        return true;
      }
      if (have_prev && g_prev * gap < 0.0) {
        double lo = t_prev, hi = t;
        for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double rm = lerp(r0, r1, mid);
          const double gm = lerp(x0, x1, mid) - bowl.V_at(std::max(rm, bowl.r_lo()));
          if ((gm < 0.0) == (g_prev < 0.0))
            lo = mid;
          else
            hi = mid;
        }
        if (touch) {
          const double tm = 0.5 * (lo + hi);
          *touch = {lerp(r0, r1, tm), lerp(x0, x1, tm)};
        }
        return true;
      }
      have_prev = true;
      g_prev = gap;
      t_prev = t;
    }
  }
  return false;
}

SweepResult sweep_aperture(const ObstacleProfile& obstacle, int n, double R0,
                           double tol, int grid_size) {
  obstacle.validate();
  if (!(R0 > 0.0)) throw DomainError("aperture sweep needs a positive starting radius");
  if (!(tol > 0.0)) throw DomainError("sweep tolerance must be positive");
  if (grid_size < 2) throw DomainError("sweep grid needs at least two values");

  const double r_need = *std::max_element(obstacle.r.begin(), obstacle.r.end());
  SolverConfig cfg;
  cfg.r_max = std::max(r_need + 2.0, R0 + 4.0);

  SweepResult result;
  std::array<double, 2> touch{0.0, 0.0};
  std::array<double, 2> last_touch{0.0, 0.0};
  const double tol_geom = 1e-9;

  auto predicate = [&](double R) {
    ++result.iterations;
    bool hit;
    if (R <= 0.0) {
      GraphProfile bowl = graph_view(solve_bowl(n, cfg), 0.0);
      hit = bowl_intersects(bowl, obstacle, tol_geom, &touch);
    } else {
      WingSolution w = solve_wing(n, R, cfg);
      hit = wing_intersects(w, obstacle, tol_geom, &touch);
    }
    if (hit) last_touch = touch;
    return hit;
  };

  if (predicate(R0))
    throw DomainError("obstacle already meets the starting family member");

  // Downward grid scan to the largest intersecting member, then local
  // bisection of the bracket around the supremum.
  double lo_true = -1.0, hi_false = R0;
  for (int k = grid_size - 2; k >= 0; --k) {
    const double R = R0 * k / (grid_size - 1);
    if (predicate(R)) {
      lo_true = R;
      break;
    }
    hi_false = R;
  }
  if (lo_true < 0.0) {
    result.critical_found = false;
    result.case_note = "obstacle misses every member down to the bowl";
    return result;
  }
  while (hi_false - lo_true > tol) {
    const double mid = 0.5 * (lo_true + hi_false);
    if (predicate(mid))
      lo_true = mid;
    else
      hi_false = mid;
  }
  result.critical_found = true;
  result.critical_value = 0.5 * (lo_true + hi_false);
  result.touch_found = true;
  result.touch_r = last_touch[0];
  result.touch_x = last_touch[1];
  result.case_note = "supremum bracketed on a " + std::to_string(grid_size) +
                     "-value grid and refined by bisection";
  return result;
}

SweepResult sweep_translate(const ObstacleProfile& obstacle, int n, int sign,
                            double tol) {
  obstacle.validate();
  if (sign != 1 && sign != -1) throw DomainError("translate sign must be +1 or -1");
  if (!(tol > 0.0)) throw DomainError("sweep tolerance must be positive");

  const double r_need = *std::max_element(obstacle.r.begin(), obstacle.r.end());
  SolverConfig cfg;
  cfg.r_max = r_need + 2.0;
  GraphProfile bowl = graph_view(solve_bowl(n, cfg), 0.0);
  auto height = [&](double r) { return bowl.V_at(std::max(r, bowl.r_lo())); };

  // Signed gap from each obstacle sample to the graph; positive on the
  // stated side. The touching translate is the least gap, located by
  // bisection of the monotone contact predicate.
  double min_gap = std::numeric_limits<double>::infinity();
  double max_gap = 0.0;
  Vec2 closest{0.0, 0.0};
  const size_t nseg = obstacle.size() > 1 ? obstacle.size() - 1 : 1;
  for (size_t i = 0; i < nseg; ++i) {
    const double r0 = obstacle.r[i], x0 = obstacle.x[i];
    const double r1 = obstacle.size() > 1 ? obstacle.r[i + 1] : r0;
    const double x1 = obstacle.size() > 1 ? obstacle.x[i + 1] : x0;
    const double len = std::hypot(r1 - r0, x1 - x0);
    const int m = std::min(40000, std::max(1, static_cast<int>(std::ceil(len / kSubsampleSpacing))));
    for (int j = 0; j <= m; ++j) {
      const double t = static_cast<double>(j) / m;
      const double r = lerp(r0, r1, t);
      const double x = lerp(x0, x1, t);
      const double gap = sign < 0 ? height(r) - x : x - height(r);
      if (gap <= 0.0)
        throw DomainError("obstacle is not strictly on the stated side of the graph");
      if (gap < min_gap) {
        min_gap = gap;
        closest = {r, x};
      }
      max_gap = std::max(max_gap, gap);
    }
  }

  SweepResult result;
  auto contact = [&](double s) {
    ++result.iterations;
    return min_gap <= s;
  };
  double lo = 0.0, hi = max_gap + 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (contact(mid))
      hi = mid;
    else
      lo = mid;
  }
  result.critical_found = true;
  result.critical_value = 0.5 * (lo + hi);
  result.touch_found = true;
  result.touch_r = closest.r;
  result.touch_x = closest.x;
  result.case_note = sign < 0 ? "downward translates of the graph, first touch from above"
                              : "upward translates of the graph, first touch from below";
  return result;
}

} // namespace tsol
