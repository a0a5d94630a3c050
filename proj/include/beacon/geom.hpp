#pragma once

// Floating-point kernel: points, vectors, tolerance-aware predicates, half-planes
// and the convex half-plane intersection used by every other module.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "beacon/error.hpp"

namespace beacon {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
constexpr Point2 perp_left(Point2 a) { return {-a.y, a.x}; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 normalized(Point2 a) {
  const double len = norm(a);
  return len > 0.0 ? a / len : Point2{};
}
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline bool near(Point2 a, Point2 b, double eps) { return dist(a, b) <= eps; }
constexpr Point2 lerp(Point2 a, Point2 b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }

// eps_geom snaps; eps_dist decides when a moving point has arrived.
struct Tolerance {
  double eps_geom = 1e-9;
  double eps_dist = 1e-9;

  static Tolerance for_diameter(double diameter) {
    const double d = diameter > 0.0 ? diameter : 1.0;
    return {1e-9 * d, 1e-9 * d};
  }
  bool valid() const { return eps_geom > 0.0 && eps_dist > 0.0 && eps_dist >= eps_geom; }
};

enum class Orientation { CCW, CW, COLLINEAR };

inline double orientation_scale(std::initializer_list<Point2> pts) {
  double s = 0.0;
  for (const Point2& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return std::max(s, 1e-300);
}

inline Orientation orientation(Point2 a, Point2 b, Point2 c, double eps) {
  const double v = cross(b - a, c - a);
  if (std::abs(v) <= eps * orientation_scale({a, b, c})) return Orientation::COLLINEAR;
  return v > 0.0 ? Orientation::CCW : Orientation::CW;
}

// Side of c relative to the directed line a->b measured as a distance, so
// the tolerance is in length units independent of |b - a|.
inline int side_of_line(Point2 a, Point2 b, Point2 c, double eps) {
  const Point2 d = b - a;
  const double len = norm(d);
  if (len == 0.0) return 0;
  const double s = cross(d, c - a) / len;
  if (s > eps) return 1;
  if (s < -eps) return -1;
  return 0;
}

inline Point2 orthogonal_projection(Point2 p, Point2 a, Point2 dir) {
  const double len = norm(dir);
  if (!(len > 0.0)) throw Error(ErrorCode::DegenerateInput, "projection direction has zero length");
  const Point2 d = dir / len;
  return a + dot(p - a, d) * d;
}

// {(x,y) : a*x + b*y <= c}, stored with (a,b) of unit length.
struct HalfPlane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  static HalfPlane make(double a, double b, double c) {
    const double len = std::hypot(a, b);
    if (!(len > 0.0) || !std::isfinite(len))
      throw Error(ErrorCode::DegenerateInput, "half-plane normal is zero");
    return {a / len, b / len, c / len};
  }
  // Points to the left of the directed line from -> to (interior on the left).
  static HalfPlane left_of(Point2 from, Point2 to) {
    const Point2 d = to - from;
    // outward normal is the right-hand normal (d.y, -d.x)
    return make(d.y, -d.x, d.y * from.x - d.x * from.y);
  }
  // Points q with (q - through) . dir >= 0.
  static HalfPlane facing(Point2 through, Point2 dir) {
    return make(-dir.x, -dir.y, -(dir.x * through.x + dir.y * through.y));
  }

  Point2 normal() const { return {a, b}; }
  double signed_distance(Point2 p) const { return a * p.x + b * p.y - c; }
  bool contains(Point2 p, double eps) const { return signed_distance(p) <= eps; }
  bool strictly_contains(Point2 p, double eps) const { return signed_distance(p) < -eps; }
  HalfPlane complement() const { return {-a, -b, -c}; }
  // Direction of the boundary line with the interior on its left.
  Point2 direction() const { return {-b, a}; }
  Point2 anchor() const { return {a * c, b * c}; }

  bool same_line(const HalfPlane& o, double eps) const {
    const bool same = std::abs(a - o.a) <= eps && std::abs(b - o.b) <= eps && std::abs(c - o.c) <= eps;
    const bool flipped = std::abs(a + o.a) <= eps && std::abs(b + o.b) <= eps && std::abs(c + o.c) <= eps;
    return same || flipped;
  }
};

struct Wedge {
  Point2 apex;
  HalfPlane first;
  HalfPlane second;

  bool contains(Point2 p, double eps) const { return first.contains(p, eps) && second.contains(p, eps); }
  bool strictly_contains(Point2 p, double eps) const {
    return first.strictly_contains(p, eps) && second.strictly_contains(p, eps);
  }
};

struct Segment {
  Point2 a;
  Point2 b;
  double length() const { return dist(a, b); }
};

struct BBox {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  static BBox of(std::span<const Point2> pts) {
    BBox box{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const Point2& p : pts) box.expand(p);
    return box;
  }
  void expand(Point2 p) {
    xmin = std::min(xmin, p.x);
    ymin = std::min(ymin, p.y);
    xmax = std::max(xmax, p.x);
    ymax = std::max(ymax, p.y);
  }
  void merge(const BBox& o) {
    expand({o.xmin, o.ymin});
    expand({o.xmax, o.ymax});
  }
  BBox inflated(double d) const { return {xmin - d, ymin - d, xmax + d, ymax + d}; }
  double diameter() const { return std::hypot(xmax - xmin, ymax - ymin); }
  bool valid() const { return xmax > xmin && ymax > ymin; }
  std::array<HalfPlane, 4> planes() const {
    return {HalfPlane::make(1, 0, xmax), HalfPlane::make(-1, 0, -xmin), HalfPlane::make(0, 1, ymax),
            HalfPlane::make(0, -1, -ymin)};
  }
  std::vector<Point2> corners() const { return {{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}}; }
};

inline double signed_area(std::span<const Point2> pts) {
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  // shoelace relative to the first vertex keeps cancellation small far from the origin
  double s = 0.0;
  const Point2 o = pts[0];
  for (std::size_t i = 1; i + 1 < n; ++i) s += cross(pts[i] - o, pts[i + 1] - o);
  return 0.5 * s;
}

inline Point2 line_intersection(Point2 p, Point2 dp, Point2 q, Point2 dq) {
  const double t = cross(q - p, dq) / cross(dp, dq);
  return p + t * dp;
}

using SegmentIntersection = std::variant<std::monostate, Point2, Segment>;

inline SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2, double eps) {
  const Point2 d1 = s1.b - s1.a;
  const Point2 d2 = s2.b - s2.a;
  const double len1 = norm(d1);
  const double len2 = norm(d2);
  if (len1 == 0.0 || len2 == 0.0) throw Error(ErrorCode::DegenerateInput, "zero-length segment");

  const int o1 = side_of_line(s1.a, s1.b, s2.a, eps);
  const int o2 = side_of_line(s1.a, s1.b, s2.b, eps);
  const int o3 = side_of_line(s2.a, s2.b, s1.a, eps);
  const int o4 = side_of_line(s2.a, s2.b, s1.b, eps);

  if (o1 == 0 && o2 == 0) {
    // collinear: project onto s1
    const Point2 u = d1 / len1;
    double t0 = dot(s2.a - s1.a, u);
    double t1 = dot(s2.b - s1.a, u);
    if (t0 > t1) std::swap(t0, t1);
    const double lo = std::max(0.0, t0);
    const double hi = std::min(len1, t1);
    if (hi < lo - eps) return std::monostate{};
    if (hi - lo <= eps) return s1.a + (0.5 * (lo + hi)) * u;
    return Segment{s1.a + lo * u, s1.a + hi * u};
  }
  if (o1 * o2 > 0 || o3 * o4 > 0) return std::monostate{};
  if (o1 == 0) return s2.a;
  if (o2 == 0) return s2.b;
  if (o3 == 0) return s1.a;
  if (o4 == 0) return s1.b;
  return line_intersection(s1.a, d1, s2.a, d2);
}

// Cyrus-Beck clip of a segment against a convex CCW polygon; returns the
// parameter interval [t0, t1] within [0, 1] or nothing.
inline std::optional<std::pair<double, double>> clip_segment_to_convex(Point2 a, Point2 b,
                                                                        std::span<const Point2> convex) {
  double t0 = 0.0, t1 = 1.0;
  const Point2 d = b - a;
  const std::size_t m = convex.size();
  if (m < 3) return std::nullopt;
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 p = convex[i];
    const Point2 q = convex[(i + 1) % m];
    const Point2 e = q - p;
    // inside when cross(e, x - p) >= 0
    const double num = cross(e, a - p);
    const double den = cross(e, d);
    if (den == 0.0) {
      if (num < 0.0) return std::nullopt;
      continue;
    }
    const double t = -num / den;
    if (den > 0.0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 > t1) return std::nullopt;
  }
  return std::make_pair(t0, t1);
}

// Convex polygon bbox ∩ planes, CCW; empty when the intersection has no area.
// Angular sort plus a deque sweep, O(m log m).
inline std::vector<Point2> halfplane_intersection(std::span<const HalfPlane> planes, const BBox& bbox,
                                                  double eps = 0.0) {
  if (!bbox.valid()) throw Error(ErrorCode::DegenerateInput, "bounding box is degenerate");
  struct Line {
    Point2 p;
    Point2 d;
    double angle;
    const HalfPlane* hp;
  };
  std::vector<HalfPlane> all(planes.begin(), planes.end());
  for (const HalfPlane& h : bbox.planes()) all.push_back(h);

  std::vector<Line> lines;
  lines.reserve(all.size());
  for (const HalfPlane& h : all) {
    const Point2 d = h.direction();
    lines.push_back({h.anchor(), d, std::atan2(d.y, d.x), &h});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& l, const Line& r) { return l.angle < r.angle; });
  // keep only the tightest line per direction; normals equal up to rounding
  // can land a few ulps apart in angle
  std::vector<Line> uniq;
  uniq.reserve(lines.size());
  double group_angle = 0.0;
  for (const Line& l : lines) {
    if (!uniq.empty() && l.angle - group_angle <= 1e-12) {
      if (l.hp->c < uniq.back().hp->c) uniq.back() = l;
      continue;
    }
    group_angle = l.angle;
    uniq.push_back(l);
  }

  auto outside = [eps](const Line& l, Point2 x) { return cross(l.d, x - l.p) < -eps; };
  auto meet = [](const Line& l, const Line& m, Point2& out) {
    const double den = cross(l.d, m.d);
    if (std::abs(den) <= 1e-18) return false;
    out = l.p + (cross(m.p - l.p, m.d) / den) * l.d;
    return true;
  };

  std::vector<Line> dq(uniq.size() + 1);
  std::vector<Point2> pts(uniq.size() + 1);
  std::size_t head = 0, tail = 0;  // lines dq[head, tail), points pts[head+1, tail)
  for (const Line& l : uniq) {
    while (tail - head >= 2 && outside(l, pts[tail - 1])) --tail;
    while (tail - head >= 2 && outside(l, pts[head + 1])) ++head;
    dq[tail++] = l;
    if (tail - head >= 2) {
      if (!meet(dq[tail - 2], dq[tail - 1], pts[tail - 1])) {
        // anti-parallel neighbours: the strip between them is empty or degenerate
        if (dot(dq[tail - 2].d, l.d) < 0.0) return {};
        --tail;
      }
    }
  }
  while (tail - head >= 3 && outside(dq[head], pts[tail - 1])) --tail;
  while (tail - head >= 3 && outside(dq[tail - 1], pts[head + 1])) ++head;
  if (tail - head < 3) return {};

  std::vector<Point2> poly;
  for (std::size_t i = head + 1; i < tail; ++i) poly.push_back(pts[i]);
  Point2 closing;
  if (!meet(dq[tail - 1], dq[head], closing)) return {};
  poly.push_back(closing);

  // drop coincident vertices
  std::vector<Point2> clean;
  const double snap = std::max(eps, 1e-12 * std::max(1.0, bbox.diameter()));
  for (const Point2& p : poly)
    if (clean.empty() || !near(clean.back(), p, snap)) clean.push_back(p);
  while (clean.size() > 1 && near(clean.front(), clean.back(), snap)) clean.pop_back();
  if (clean.size() < 3) return {};
  if (signed_area(clean) <= snap * bbox.diameter()) return {};
  return clean;
}

}  // namespace beacon
