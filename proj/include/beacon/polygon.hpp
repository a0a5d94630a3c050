#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beacon/error.hpp"
#include "beacon/geom.hpp"

namespace beacon {

// Angle in [0, 2*pi) swept counter-clockwise from `from` to `to`.
inline double ccw_angle(Point2 from, Point2 to) {
  double a = std::atan2(cross(from, to), dot(from, to));
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

inline constexpr double kAngleEps = 1e-10;

// A point on the boundary: edge `edge` runs from vertex edge to vertex edge+1.
// t == 0 exactly means the point is vertex `edge`.
struct BoundaryPoint {
  std::size_t edge = 0;
  double t = 0.0;
  Point2 point;

  bool is_vertex() const { return t == 0.0; }
  double position() const { return static_cast<double>(edge) + t; }
};

class SimplePolygon {
 public:
  SimplePolygon() = default;

  // Checks simplicity; CW input is reversed.
  static SimplePolygon validate(std::vector<Point2> vertices);
  // Trusted construction for generated instances too large for the
  // pairwise simplicity check; only orientation is normalized.
  static SimplePolygon from_trusted(std::vector<Point2> vertices) {
    if (vertices.size() < 3) throw Error(ErrorCode::TooFewVertices, "need at least 3 vertices");
    if (signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
    return SimplePolygon(std::move(vertices));
  }

  std::size_t size() const { return v_.size(); }
  const std::vector<Point2>& vertices() const { return v_; }
  Point2 vertex(std::size_t i) const { return v_[i % v_.size()]; }
  std::size_t next(std::size_t i) const { return (i + 1) % v_.size(); }
  std::size_t prev(std::size_t i) const { return (i + v_.size() - 1) % v_.size(); }
  Segment edge(std::size_t i) const { return {v_[i], v_[next(i)]}; }
  const BBox& bbox() const { return bbox_; }
  double diameter() const { return bbox_.diameter(); }
  double area() const { return signed_area(v_); }
  const Tolerance& tol() const { return tol_; }
  double eps() const { return tol_.eps_geom; }
  void set_tolerance(const Tolerance& t) { tol_ = t; }

  BoundaryPoint boundary_point(std::size_t edge, double t) const {
    if (t >= 1.0) return {next(edge), 0.0, v_[next(edge)]};
    if (t <= 0.0) return {edge, 0.0, v_[edge]};
    return {edge, t, lerp(v_[edge], v_[next(edge)], t)};
  }
  BoundaryPoint vertex_point(std::size_t i) const { return {i % size(), 0.0, vertex(i)}; }

  // Snaps q onto the boundary if it lies within eps of it.
  std::optional<BoundaryPoint> locate_on_boundary(Point2 q) const {
    const double eps = this->eps();
    for (std::size_t i = 0; i < size(); ++i)
      if (near(v_[i], q, eps)) return vertex_point(i);
    for (std::size_t i = 0; i < size(); ++i) {
      const Segment e = edge(i);
      const Point2 d = e.b - e.a;
      const double t = dot(q - e.a, d) / dot(d, d);
      if (t <= 0.0 || t >= 1.0) continue;
      if (dist(lerp(e.a, e.b, t), q) <= eps) return BoundaryPoint{i, t, q};
    }
    return std::nullopt;
  }

  bool is_reflex(std::size_t i) const {
    const Point2 a = vertex(prev(i)), b = vertex(i), c = vertex(next(i));
    return side_of_line(a, b, c, eps()) < 0;
  }

  // Whether direction d leaves vertex i into the interior. `strict` excludes
  // directions along the incident edges.
  bool points_inside_at_vertex(std::size_t i, Point2 d, bool strict) const {
    const Point2 to_next = vertex(next(i)) - vertex(i);
    const Point2 to_prev = vertex(prev(i)) - vertex(i);
    const double span = ccw_angle(to_next, to_prev);
    double a = ccw_angle(to_next, d);
    if (a > 2.0 * std::numbers::pi - kAngleEps) a = 0.0;
    if (strict) return a > kAngleEps && a < span - kAngleEps;
    return a <= span + kAngleEps;
  }

  // Whether direction d leaves the boundary point into the interior.
  bool points_inside(const BoundaryPoint& bp, Point2 d, bool strict) const {
    if (bp.is_vertex()) return points_inside_at_vertex(bp.edge, d, strict);
    const Point2 e = normalized(edge(bp.edge).b - edge(bp.edge).a);
    const double c = cross(e, normalized(d));
    return strict ? c > kAngleEps : c >= -kAngleEps;
  }

 private:
  explicit SimplePolygon(std::vector<Point2> v) : v_(std::move(v)) {
    bbox_ = BBox::of(v_);
    tol_ = Tolerance::for_diameter(bbox_.diameter());
  }

  std::vector<Point2> v_;
  BBox bbox_;
  Tolerance tol_;
};

inline SimplePolygon SimplePolygon::validate(std::vector<Point2> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw Error(ErrorCode::TooFewVertices, "need at least 3 vertices, got " + std::to_string(n));
  for (const Point2& p : vertices)
    if (!is_finite(p)) throw Error(ErrorCode::DegenerateInput, "non-finite coordinate");
  const double eps = Tolerance::for_diameter(BBox::of(vertices).diameter()).eps_geom;

  // duplicates, via a lexicographic sort
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return vertices[a].x < vertices[b].x || (vertices[a].x == vertices[b].x && vertices[a].y < vertices[b].y);
  });
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t m = k + 1; m < n && vertices[order[m]].x - vertices[order[k]].x <= eps; ++m)
      if (near(vertices[order[k]], vertices[order[m]], eps))
        throw Error(ErrorCode::DuplicateVertex,
                    "vertices " + std::to_string(order[k]) + " and " + std::to_string(order[m]) + " coincide");

  // edge pairs, pruned by x-extent
  struct Span {
    double lo, hi;
    std::size_t i;
  };
  std::vector<Span> spans(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices[i], b = vertices[(i + 1) % n];
    spans[i] = {std::min(a.x, b.x), std::max(a.x, b.x), i};
  }
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = k + 1; m < n && spans[m].lo <= spans[k].hi + eps; ++m) {
      const std::size_t i = spans[k].i, j = spans[m].i;
      const Segment si{vertices[i], vertices[(i + 1) % n]};
      const Segment sj{vertices[j], vertices[(j + 1) % n]};
      const auto hit = segment_intersection(si, sj, eps);
      if (std::holds_alternative<std::monostate>(hit)) continue;
      const bool adjacent = (i + 1) % n == j || (j + 1) % n == i;
      if (adjacent && std::holds_alternative<Point2>(hit)) continue;  // shared endpoint
      if (adjacent && n == 3) continue;
      throw Error(ErrorCode::SelfIntersecting,
                  "edges " + std::to_string(std::min(i, j)) + " and " + std::to_string(std::max(i, j)) + " intersect");
    }
  }
  if (signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
  if (signed_area(vertices) <= eps * eps) throw Error(ErrorCode::DegenerateInput, "polygon has zero area");
  return SimplePolygon(std::move(vertices));
}

// locate_on_boundary for many queries: edges bucketed in a uniform grid by
// the cells they pass through.
class BoundaryLocator {
 public:
  explicit BoundaryLocator(const SimplePolygon& poly) : poly_(&poly) {
    const std::size_t n = poly.size();
    eps_ = poly.eps();
    box_ = poly.bbox().inflated(2 * eps_);
    g_ = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))), 1, 2048);
    cw_ = (box_.xmax - box_.xmin) / static_cast<double>(g_);
    ch_ = (box_.ymax - box_.ymin) / static_cast<double>(g_);
    cells_.resize(g_ * g_);
    for (std::size_t i = 0; i < n; ++i) insert(i);
  }

  std::optional<BoundaryPoint> locate(Point2 q) const {
    if (q.x < box_.xmin || q.x > box_.xmax || q.y < box_.ymin || q.y > box_.ymax) return std::nullopt;
    const auto& bucket = cells_[row(q.y) * g_ + col(q.x)];
    std::optional<BoundaryPoint> on_edge;
    std::size_t vertex = static_cast<std::size_t>(-1);
    const std::size_t n = poly_->size();
    for (std::size_t i : bucket) {
      for (std::size_t v : {i, (i + 1) % n})
        if (v < vertex && near(poly_->vertex(v), q, eps_)) vertex = v;
      const Segment e = poly_->edge(i);
      const Point2 d = e.b - e.a;
      const double t = dot(q - e.a, d) / dot(d, d);
      if (t <= 0.0 || t >= 1.0 || dist(lerp(e.a, e.b, t), q) > eps_) continue;
      if (!on_edge || i < on_edge->edge) on_edge = BoundaryPoint{i, t, q};
    }
    if (vertex != static_cast<std::size_t>(-1)) return poly_->vertex_point(vertex);
    return on_edge;
  }

 private:
  std::size_t col(double x) const {
    return std::min(g_ - 1, static_cast<std::size_t>(std::max(0.0, (x - box_.xmin) / cw_)));
  }
  std::size_t row(double y) const {
    return std::min(g_ - 1, static_cast<std::size_t>(std::max(0.0, (y - box_.ymin) / ch_)));
  }

  // Per row band, the x-range of the edge within it, widened by eps.
  void insert(std::size_t i) {
    const Segment e = poly_->edge(i);
    const double pad = 2 * eps_;
    const std::size_t r0 = row(std::min(e.a.y, e.b.y) - pad), r1 = row(std::max(e.a.y, e.b.y) + pad);
    for (std::size_t r = r0; r <= r1; ++r) {
      const double y0 = box_.ymin + static_cast<double>(r) * ch_ - pad, y1 = y0 + ch_ + 2 * pad;
      double xa = std::min(e.a.x, e.b.x), xb = std::max(e.a.x, e.b.x);
      if (e.b.y != e.a.y) {
        const double ta = std::clamp((y0 - e.a.y) / (e.b.y - e.a.y), 0.0, 1.0);
        const double tb = std::clamp((y1 - e.a.y) / (e.b.y - e.a.y), 0.0, 1.0);
        const double x0 = e.a.x + ta * (e.b.x - e.a.x), x1 = e.a.x + tb * (e.b.x - e.a.x);
        xa = std::min(x0, x1);
        xb = std::max(x0, x1);
      }
      for (std::size_t c = col(xa - pad), c1 = col(xb + pad); c <= c1; ++c) cells_[r * g_ + c].push_back(i);
    }
  }

  const SimplePolygon* poly_;
  double eps_ = 0.0, cw_ = 1.0, ch_ = 1.0;
  BBox box_;
  std::size_t g_ = 1;
  std::vector<std::vector<std::size_t>> cells_;
};

enum class Containment { Interior, Boundary, Exterior };

inline Containment contains(const SimplePolygon& poly, Point2 q) {
  const double eps = poly.eps();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e = poly.edge(i);
    const Point2 d = e.b - e.a;
    const double t = std::clamp(dot(q - e.a, d) / dot(d, d), 0.0, 1.0);
    if (dist(lerp(e.a, e.b, t), q) <= eps) return Containment::Boundary;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = poly.vertex(i), b = poly.vertex(j);
    if ((a.y > q.y) != (b.y > q.y)) {
      const double x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (q.x < x) inside = !inside;
    }
  }
  return inside ? Containment::Interior : Containment::Exterior;
}

inline Containment contains(std::span<const Point2> ring, Point2 q, double eps) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = ring[i], b = ring[(i + 1) % n];
    const Point2 d = b - a;
    const double dd = dot(d, d);
    const double t = dd > 0.0 ? std::clamp(dot(q - a, d) / dd, 0.0, 1.0) : 0.0;
    if (dist(lerp(a, b, t), q) <= eps) return Containment::Boundary;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = ring[i], b = ring[j];
    if ((a.y > q.y) != (b.y > q.y)) {
      const double x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (q.x < x) inside = !inside;
    }
  }
  return inside ? Containment::Interior : Containment::Exterior;
}

// Deadwedge of a reflex vertex: the intersection of the two half-planes that
// are bounded by the normals to the incident edges at r and contain those edges.
inline Wedge deadwedge(const SimplePolygon& poly, std::size_t r) {
  if (!poly.is_reflex(r)) throw Error(ErrorCode::NotReflex, "vertex " + std::to_string(r) + " is not reflex");
  const Point2 apex = poly.vertex(r);
  return {apex, HalfPlane::facing(apex, poly.vertex(poly.prev(r)) - apex),
          HalfPlane::facing(apex, poly.vertex(poly.next(r)) - apex)};
}

enum class GrazePolicy {
  Stop,  // a ray touching a vertex ends there
  Pass,  // a ray that touches a vertex and stays inside continues
};

// First boundary point hit by the ray origin + t*dir, t > 0. Brute force over
// all edges; see RayShooter for the triangulation walk.
inline BoundaryPoint ray_shoot(const SimplePolygon& poly, Point2 origin, Point2 dir,
                               GrazePolicy policy = GrazePolicy::Stop) {
  const double eps = poly.eps();
  const double dlen = norm(dir);
  if (!(dlen > 0.0)) throw Error(ErrorCode::DegenerateInput, "ray direction is zero");
  const Point2 d = dir / dlen;
  const auto start = poly.locate_on_boundary(origin);
  if (start) {
    if (!poly.points_inside(*start, d, false))
      throw Error(ErrorCode::RayExitsImmediately, "ray leaves the polygon at its origin");
  } else if (contains(poly, origin) == Containment::Exterior) {
    throw Error(ErrorCode::PointOutsidePolygon, "ray origin outside polygon");
  }

  const std::size_t n = poly.size();
  struct Hit {
    double t;
    BoundaryPoint bp;
  };
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly.vertex(i), b = poly.vertex(poly.next(i));
    const Point2 e = b - a;
    const double den = cross(d, e);
    const double sa = cross(d, a - origin);  // signed offsets of the endpoints from the ray line
    const double sb = cross(d, b - origin);
    auto vertex_hit = [&](std::size_t vi, Point2 vp) {
      const double t = dot(vp - origin, d);
      if (t > eps) hits.push_back({t, poly.vertex_point(vi)});
    };
    if (std::abs(sa) <= eps) vertex_hit(i, a);
    if (std::abs(sb) <= eps) vertex_hit(poly.next(i), b);
    if (std::abs(sa) <= eps || std::abs(sb) <= eps) continue;
    if ((sa > 0.0) == (sb > 0.0)) continue;
    if (den == 0.0) continue;
    const double s = cross(origin - a, d) / -den;  // parameter along the edge
    const Point2 hp = a + s * e;
    const double t = dot(hp - origin, d);
    if (t <= eps) continue;
    hits.push_back({t, poly.boundary_point(i, std::clamp(s, 0.0, 1.0))});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.t < y.t; });
  for (const Hit& h : hits) {
    if (start && dist(h.bp.point, origin) <= eps) continue;
    if (h.bp.is_vertex() && policy == GrazePolicy::Pass && poly.points_inside(h.bp, d, true)) continue;
    if (!h.bp.is_vertex()) {
      // snap near-vertex hits
      const Point2 a = poly.vertex(h.bp.edge), b = poly.vertex(poly.next(h.bp.edge));
      if (near(h.bp.point, a, eps)) return poly.vertex_point(h.bp.edge);
      if (near(h.bp.point, b, eps)) return poly.vertex_point(poly.next(h.bp.edge));
    }
    return h.bp;
  }
  throw Error(ErrorCode::DegenerateInput, "ray found no boundary hit");
}

// Segment ab lies in the closed polygon.
inline bool sees(const SimplePolygon& poly, Point2 a, Point2 b) {
  const double eps = poly.eps();
  if (near(a, b, eps)) return contains(poly, a) != Containment::Exterior;
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  std::vector<double> cuts{0.0, 1.0};
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Segment e = poly.edge(i);
    const auto hit = segment_intersection({a, b}, e, eps);
    if (const Point2* p = std::get_if<Point2>(&hit)) {
      cuts.push_back(dot(*p - a, d) / len2);
    } else if (const Segment* s = std::get_if<Segment>(&hit)) {
      cuts.push_back(dot(s->a - a, d) / len2);
      cuts.push_back(dot(s->b - a, d) / len2);
    }
    // vertices that touch the segment split it too
    const Point2 v = e.a;
    const double t = dot(v - a, d) / len2;
    if (t > 0.0 && t < 1.0 && dist(lerp(a, b, t), v) <= eps) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = std::clamp(cuts[k], 0.0, 1.0), hi = std::clamp(cuts[k + 1], 0.0, 1.0);
    if (hi - lo <= 1e-12) continue;
    if (contains(poly, lerp(a, b, 0.5 * (lo + hi))) == Containment::Exterior) return false;
  }
  return contains(poly, a) != Containment::Exterior && contains(poly, b) != Containment::Exterior;
}

struct Chord {
  BoundaryPoint start;
  BoundaryPoint end;
  Segment carrier() const { return {start.point, end.point}; }
};

// One side of a chord: the boundary walked counter-clockwise from `from` to `to`
// plus the chord itself.
struct SubpolygonRef {
  Chord chord;
  BoundaryPoint from;
  BoundaryPoint to;

  // Vertex j lies on the open boundary arc (from, to).
  bool contains_vertex(std::size_t j) const {
    const double s = static_cast<double>(j);
    const double a = from.position(), b = to.position();
    if (a < b) return s > a && s < b;
    return s > a || s < b;
  }
  bool contains_vertex_closed(std::size_t j) const {
    const double s = static_cast<double>(j);
    return contains_vertex(j) || s == from.position() || s == to.position();
  }
  // Vertices on the arc, in counter-clockwise order, excluding the endpoints.
  std::vector<std::size_t> arc_vertices(std::size_t n) const {
    std::vector<std::size_t> out;
    std::size_t j = from.is_vertex() ? (from.edge + 1) % n : (from.edge + 1) % n;
    for (std::size_t step = 0; step < n; ++step, j = (j + 1) % n) {
      if (!contains_vertex(j)) break;
      out.push_back(j);
    }
    return out;
  }
};

inline std::pair<SubpolygonRef, SubpolygonRef> split(const SimplePolygon& poly, const Chord& chord,
                                                     bool check = true) {
  if (check && !sees(poly, chord.start.point, chord.end.point))
    throw Error(ErrorCode::ChordExitsPolygon, "chord leaves the polygon");
  if (chord.start.position() == chord.end.position())
    throw Error(ErrorCode::DegenerateInput, "chord endpoints coincide");
  return {SubpolygonRef{chord, chord.start, chord.end}, SubpolygonRef{chord, chord.end, chord.start}};
}

inline std::vector<Point2> materialize_ring(const SimplePolygon& poly, const SubpolygonRef& ref) {
  std::vector<Point2> ring{ref.from.point};
  for (std::size_t j : ref.arc_vertices(poly.size())) ring.push_back(poly.vertex(j));
  if (!near(ring.back(), ref.to.point, 0.0)) ring.push_back(ref.to.point);
  return ring;
}

inline SimplePolygon materialize(const SimplePolygon& poly, const SubpolygonRef& ref) {
  return SimplePolygon::from_trusted(materialize_ring(poly, ref));
}

}  // namespace beacon
