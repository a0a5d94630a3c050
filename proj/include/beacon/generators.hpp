#pragma once

// Instance generators: the zigzag corridor built from a set of lines, random
// simple polygons, and combs whose inverse attraction region has many pieces.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <vector>

#include "beacon/attraction.hpp"
#include "beacon/iar.hpp"
#include "beacon/polygon.hpp"

namespace beacon {

struct LineSpec {
  double slope = 0.0;
  double intercept = 0.0;
  double at(double x) const { return slope * x + intercept; }
};

inline Point2 intersect_lines(const LineSpec& a, const LineSpec& b) {
  const double x = (b.intercept - a.intercept) / (a.slope - b.slope);
  return {x, a.at(x)};
}

struct LowerEnvelope {
  std::vector<std::size_t> lines;  // active line indices, left to right
  std::vector<Point2> breakpoints;  // lines.size() - 1 points, increasing x
};

namespace detail {

// Lower of lines a, b on the open interval (lo, hi), split at their crossing.
inline void lower_on(const std::vector<LineSpec>& ls, std::size_t a, std::size_t b, double lo, double hi,
                     std::vector<std::size_t>& out) {
  auto push = [&](std::size_t i) {
    if (out.empty() || out.back() != i) out.push_back(i);
  };
  if (a == b) return push(a);
  const LineSpec &la = ls[a], &lb = ls[b];
  if (la.slope == lb.slope) {
    if (la.intercept != lb.intercept) return push(la.intercept < lb.intercept ? a : b);
    return push(std::min(a, b));
  }
  const double x = (lb.intercept - la.intercept) / (la.slope - lb.slope);
  const std::size_t steep = la.slope > lb.slope ? a : b, flat = steep == a ? b : a;
  if (x <= lo) return push(flat);
  if (x >= hi) return push(steep);
  push(steep);
  push(flat);
}

inline std::vector<double> breakpoint_xs(const std::vector<LineSpec>& ls, const std::vector<std::size_t>& seq) {
  std::vector<double> xs;
  for (std::size_t j = 0; j + 1 < seq.size(); ++j) xs.push_back(intersect_lines(ls[seq[j]], ls[seq[j + 1]]).x);
  return xs;
}

inline std::vector<std::size_t> merge_envelopes(const std::vector<LineSpec>& ls, const std::vector<std::size_t>& A,
                                                const std::vector<std::size_t>& B) {
  const auto xa = breakpoint_xs(ls, A), xb = breakpoint_xs(ls, B);
  std::vector<std::size_t> out;
  const double inf = std::numeric_limits<double>::infinity();
  std::size_t i = 0, j = 0;
  double lo = -inf;
  while (true) {
    const double na = i < xa.size() ? xa[i] : inf, nb = j < xb.size() ? xb[j] : inf;
    const double hi = std::min(na, nb);
    lower_on(ls, A[i], B[j], lo, hi, out);
    if (hi == inf) break;
    if (na == hi) ++i;
    if (nb == hi) ++j;
    lo = hi;
  }
  return out;
}

inline std::vector<std::size_t> envelope_range(const std::vector<LineSpec>& ls, const std::vector<std::size_t>& idx,
                                               std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return {idx[lo]};
  const std::size_t mid = (lo + hi) / 2;
  return merge_envelopes(ls, envelope_range(ls, idx, lo, mid), envelope_range(ls, idx, mid, hi));
}

}  // namespace detail

// Divide and conquer over the input order.
inline LowerEnvelope lower_envelope(const std::vector<LineSpec>& lines) {
  if (lines.empty()) throw Error(ErrorCode::DegenerateInput, "lower envelope of no lines");
  std::vector<std::size_t> idx(lines.size());
  std::iota(idx.begin(), idx.end(), 0);
  LowerEnvelope env;
  env.lines = detail::envelope_range(lines, idx, 0, idx.size());
  for (std::size_t j = 0; j + 1 < env.lines.size(); ++j)
    env.breakpoints.push_back(intersect_lines(lines[env.lines[j]], lines[env.lines[j + 1]]));
  return env;
}

inline double envelope_value(const std::vector<LineSpec>& lines, const LowerEnvelope& env, double x) {
  std::size_t j = 0;
  while (j < env.breakpoints.size() && env.breakpoints[j].x < x) ++j;
  return lines[env.lines[j]].at(x);
}

// Tangents of the concave curve eps*(x - x^2/(2X)) at jittered abscissae, so
// every line shows up on the lower envelope. Sorted by decreasing slope.
inline std::vector<LineSpec> zigzag_lines(std::size_t k, std::uint64_t seed, double eps = 0.05) {
  if (k == 0) throw Error(ErrorCode::DegenerateInput, "zigzag needs at least one line");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gap(0.5, 1.5);
  std::vector<double> xs;
  double x = 0.0;
  for (std::size_t i = 0; i < k; ++i) xs.push_back(x += gap(rng));
  const double X = x + 1.0;
  std::vector<LineSpec> out;
  for (double t : xs) out.push_back({eps * (1.0 - t / X), eps * t * t / (2.0 * X)});
  return out;
}

struct ZigzagParams {
  double eps = 0.05;        // slope bound
  double rise = 1.0;        // how far each corridor top clears the next line
  double width = 0.25;      // corridor width
  double min_step = 1.0;    // shortest up corridor
  double margin = 1.0;      // slack around the line intersections
};

struct ZigzagInstance {
  SimplePolygon polygon;
  Point2 p;
  BBox R;
  HalfPlane L_u;  // beacons of R that attract p satisfy this
  std::vector<LineSpec> lines;
};

inline void check_slopes(const std::vector<LineSpec>& lines, double eps) {
  std::vector<double> s;
  for (const auto& l : lines) {
    if (!(l.slope > 0.0 && l.slope <= eps) || !std::isfinite(l.intercept))
      throw Error(ErrorCode::DegenerateSlopes, "zigzag slopes must lie in (0, eps]");
    s.push_back(l.slope);
  }
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i + 1] - s[i] <= 1e-12 * eps) throw Error(ErrorCode::DegenerateSlopes, "zigzag slopes must be distinct");
}

// Down corridors perpendicular to each line, joined by slope-1 up corridors,
// then a horizontal corridor into the rectangle R that holds all crossings.
inline ZigzagInstance zigzag_polygon(std::vector<LineSpec> lines, const ZigzagParams& prm = {}) {
  check_slopes(lines, prm.eps);
  std::sort(lines.begin(), lines.end(), [](const LineSpec& a, const LineSpec& b) { return a.slope > b.slope; });
  const std::size_t k = lines.size();
  const double h = prm.rise, w = prm.width, M = prm.margin;

  BBox cross_box{};
  if (k == 1) {
    cross_box = BBox{0.0, lines[0].at(0.0), 0.0, lines[0].at(0.0)};
  } else {
    // extreme crossings of a line family are between slope-adjacent lines
    const Point2 first = intersect_lines(lines[0], lines[1]);
    cross_box = BBox{first.x, first.y, first.x, first.y};
    for (std::size_t i = 1; i + 1 < k; ++i) cross_box.expand(intersect_lines(lines[i], lines[i + 1]));
  }
  const LowerEnvelope env = lower_envelope(lines);
  const double Rx0 = cross_box.xmin - M, Rx1 = cross_box.xmax + M;
  const double Ry0 = std::min(cross_box.ymin, envelope_value(lines, env, Rx0)) - M;
  const double env_left = envelope_value(lines, env, Rx0);

  const Point2 up{1.0, 1.0};
  const Point2 se = Point2{1.0, -1.0} / std::sqrt(2.0);
  auto down = [&](std::size_t i) { return Point2{lines[i].slope, -1.0}; };
  auto west = [&](std::size_t i) { return Point2{-1.0, -lines[i].slope} / std::hypot(1.0, lines[i].slope); };

  double x_start = Rx0 - static_cast<double>(k) * (prm.min_step + 0.5) - 10.0;
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<Point2> v(k), top(k), B(k), T(k);
    v[0] = {x_start, lines[0].at(x_start)};
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const LineSpec& next = lines[i + 1];
      const double a = std::max(prm.min_step, (h - (v[i].y - next.at(v[i].x))) / (1.0 - next.slope));
      top[i + 1] = v[i] + a * up;
      const double t = (top[i + 1].y - next.at(top[i + 1].x)) / (1.0 + next.slope * next.slope);
      v[i + 1] = top[i + 1] + t * down(i + 1);
    }
    for (std::size_t i = 0; i < k; ++i) {
      B[i] = line_intersection(v[i] + w * west(i), down(i), v[i] + w * se, up);
      if (i + 1 < k) T[i] = line_intersection(v[i] + w * se, up, v[i + 1] + w * west(i + 1), down(i + 1));
    }
    const Point2 E1 = v[0] - h * down(0);
    const Point2 wp = v[0] + w * west(0);
    const Point2 W1 = wp + (wp.y - E1.y) * down(0);

    const double Yc = std::max(v[k - 1].y + 1.0, Ry0 + 1.0);
    const Point2 sw = v[k - 1] + w * se;
    const Point2 Qp{sw.x + (Yc - sw.y), Yc};
    const Point2 Q{v[k - 1].x + (Yc + w - v[k - 1].y), Yc + w};

    double lu = Qp.x + Qp.y;
    for (std::size_t i = 0; i + 1 < k; ++i) lu = std::max(lu, T[i].x + T[i].y);
    const double need = std::max(lu + M - (Rx0 + env_left), Qp.x + M - Rx0);
    if (need > 0.0) {
      x_start -= need + 1.0;
      continue;
    }

    const double Ry1 = std::max(cross_box.ymax + M, Yc + w + M);
    std::vector<Point2> ring{W1};
    for (std::size_t i = 0; i < k; ++i) {
      ring.push_back(B[i]);
      if (i + 1 < k) ring.push_back(T[i]);
    }
    for (Point2 q : {Qp, Point2{Rx0, Yc}, Point2{Rx0, Ry0}, Point2{Rx1, Ry0}, Point2{Rx1, Ry1}, Point2{Rx0, Ry1},
                     Point2{Rx0, Yc + w}, Q})
      ring.push_back(q);
    for (std::size_t i = k; i-- > 0;) {
      ring.push_back(v[i]);
      if (i > 0) ring.push_back(top[i]);
    }
    ring.push_back(E1);

    ZigzagInstance out;
    out.polygon = k <= 512 ? SimplePolygon::validate(ring) : SimplePolygon::from_trusted(std::move(ring));
    out.p = W1;
    out.R = BBox{Rx0, Ry0, Rx1, Ry1};
    out.L_u = HalfPlane::make(-1.0, -1.0, -lu);
    out.lines = std::move(lines);
    return out;
  }
  throw Error(ErrorCode::DegenerateSlopes, "zigzag corridors could not be placed left of R");
}

// Region vertices strictly inside R, sorted by x. On a zigzag instance these
// trace the lower envelope of the lines.
inline std::vector<Point2> region_vertices_inside(const IarResult& r, const BBox& R, double margin = 1e-6) {
  std::vector<Point2> out;
  for (const auto& c : r.components)
    for (const Point2& q : c.polygon.vertices())
      if (q.x > R.xmin + margin && q.x < R.xmax - margin && q.y > R.ymin + margin && q.y < R.ymax - margin)
        out.push_back(q);
  std::sort(out.begin(), out.end(), [](Point2 a, Point2 b) { return a.x < b.x; });
  return out;
}

inline bool is_x_monotone(const SimplePolygon& poly) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i].x < v[lo].x) lo = i;
    if (v[i].x > v[hi].x) hi = i;
  }
  // one chain non-decreasing from lo to hi, the other non-increasing back
  for (std::size_t i = lo; i != hi; i = (i + 1) % n)
    if (v[(i + 1) % n].x < v[i].x) return false;
  for (std::size_t i = hi; i != lo; i = (i + 1) % n)
    if (v[(i + 1) % n].x > v[i].x) return false;
  return true;
}

// Uniform points in the unit square, untangled by 2-opt moves until simple.
inline SimplePolygon random_polygon(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorCode::TooFewVertices, "random polygon needs n >= 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto crosses = [](Point2 a, Point2 b, Point2 c, Point2 d) {
    const double o1 = cross(b - a, c - a), o2 = cross(b - a, d - a);
    const double o3 = cross(d - c, a - c), o4 = cross(d - c, b - c);
    return ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0)) && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0));
  };
  for (;;) {
    std::vector<Point2> pts(n);
    for (Point2& q : pts) q = {u(rng), u(rng)};
    // each reversal shortens the tour, so this terminates
    for (bool again = true; again;) {
      again = false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j) {
          if (i == 0 && j == n - 1) continue;
          if (crosses(pts[i], pts[i + 1], pts[j], pts[(j + 1) % n])) {
            std::reverse(pts.begin() + static_cast<std::ptrdiff_t>(i + 1), pts.begin() + static_cast<std::ptrdiff_t>(j + 1));
            again = true;
          }
        }
    }
    try {
      return SimplePolygon::validate(pts);
    } catch (const Error&) {
      // near-degenerate draw; take the next one
    }
  }
}

struct CombInstance {
  SimplePolygon polygon;
  Point2 p;
};

namespace detail {

struct CombShape {
  double spacing = 4.0;
  double mouth = 0.5;  // width of a tooth opening
  double leg1 = 2.0;
  double leg2 = 5.0;
  double leg2_width = 0.35;
  double depth = 6.0;  // bound on how far a tooth reaches below the floor
};

// Room [0, W] x [0, H] with dog-leg teeth hanging from the floor. A tooth first
// slants back toward p, then turns steeply forward; beacons deep in the second
// leg pull p along the floor and into the tooth, while the band in between
// leaves p stuck on the floor.
inline CombInstance comb_candidate(std::size_t teeth, double height, const CombShape& c) {
  const Point2 u1 = normalized({-1.0, -1.0}), u2 = normalized({1.0, -2.0}), n2 = normalized({2.0, 1.0});
  std::vector<Point2> ring{{0.0, 0.0}};
  for (std::size_t i = 1; i <= teeth; ++i) {
    const Point2 A{c.spacing * static_cast<double>(i), 0.0}, B{A.x + c.mouth, 0.0};
    const Point2 O1 = A + c.leg1 * u1;
    const Point2 I1 = line_intersection(B, u1, O1 + c.leg2_width * n2, u2);
    const Point2 W2 = O1 + c.leg2 * u2;
    for (Point2 q : {A, O1, W2, W2 + c.leg2_width * n2, I1, B}) ring.push_back(q);
  }
  const double width = c.spacing * static_cast<double>(teeth + 1);
  for (Point2 q : {Point2{width, 0.0}, Point2{width, height}, Point2{0.0, height}}) ring.push_back(q);
  return {SimplePolygon::validate(ring), {0.37, height - 0.41}};
}

// Sampling check: every tooth holds an attracting blob cut off from the floor.
inline bool comb_certified(const CombInstance& inst, std::size_t teeth, const CombShape& c) {
  const double res = 0.1;
  for (std::size_t i = 1; i <= teeth; ++i) {
    const double x0 = c.spacing * static_cast<double>(i) - c.leg1 - res;
    const std::size_t nx = static_cast<std::size_t>((c.spacing - 1.0) / res), ny = static_cast<std::size_t>(c.depth / res);
    // row 0 sits just below the floor
    std::vector<int> label(nx * ny, 0);  // 0 outside or not attracting, 1 attracting
    for (std::size_t r = 0; r < ny; ++r)
      for (std::size_t q = 0; q < nx; ++q) {
        const Point2 s{x0 + static_cast<double>(q) * res, -0.5 * res - static_cast<double>(r) * res};
        if (contains(inst.polygon, s) != Containment::Interior) continue;
        label[r * nx + q] = attracts(inst.polygon, s, inst.p) ? 1 : 0;
      }
    bool cut_off = false;
    std::vector<char> seen(label.size(), 0);
    for (std::size_t start = 0; start < label.size() && !cut_off; ++start) {
      if (!label[start] || seen[start]) continue;
      bool touches_floor = false;
      std::queue<std::size_t> bfs;
      bfs.push(start);
      seen[start] = 1;
      while (!bfs.empty()) {
        const std::size_t at = bfs.front();
        bfs.pop();
        const std::size_t r = at / nx, q = at % nx;
        if (r == 0) touches_floor = true;
        for (int dr = -1; dr <= 1; ++dr)
          for (int dq = -1; dq <= 1; ++dq) {
            const long rr = static_cast<long>(r) + dr, qq = static_cast<long>(q) + dq;
            if (rr < 0 || qq < 0 || rr >= static_cast<long>(ny) || qq >= static_cast<long>(nx)) continue;
            const std::size_t nb = static_cast<std::size_t>(rr) * nx + static_cast<std::size_t>(qq);
            if (label[nb] && !seen[nb]) {
              seen[nb] = 1;
              bfs.push(nb);
            }
          }
      }
      cut_off = !touches_floor;
    }
    if (!cut_off) return false;
  }
  return true;
}

}  // namespace detail

// Instance whose inverse attraction region has at least k components: the
// room plus one piece per tooth. Tries a few room heights and keeps the first
// that both the region construction and the sampling oracle agree on.
inline CombInstance comb_polygon(std::size_t k) {
  if (k == 0) throw Error(ErrorCode::DegenerateInput, "comb needs k >= 1");
  if (k == 1) return {SimplePolygon::validate({{0, 0}, {4, 0}, {4, 4}, {0, 4}}), {2, 2}};
  const detail::CombShape shape;
  const std::size_t teeth = k - 1;
  for (double factor : {4.0, 8.0, 16.0, 32.0}) {
    const double height = factor * static_cast<double>(teeth) * shape.depth;
    const CombInstance inst = detail::comb_candidate(teeth, height, shape);
    if (iar_optimal(inst.polygon, inst.p).components.size() < k) continue;
    if (detail::comb_certified(inst, teeth, shape)) return inst;
  }
  throw Error(ErrorCode::CertificationFailed, "comb did not reach the requested component count");
}

}  // namespace beacon
