#pragma once

// Event-driven simulation of a point moving under beacon attraction, and the
// sampling oracle built on it.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "beacon/polygon.hpp"

namespace beacon {

enum class MoveKind { Pull, Slide };

struct TrajectoryEdge {
  MoveKind kind;
  Point2 from;
  Point2 to;
  std::size_t edge = static_cast<std::size_t>(-1);  // carrying polygon edge for slides
};

enum class Outcome { ReachedBeacon, DeadPoint };

struct Trajectory {
  Point2 start;
  Point2 beacon;
  std::vector<TrajectoryEdge> edges;
  Outcome outcome = Outcome::ReachedBeacon;
  Point2 end;  // the beacon, or the dead point
};

namespace detail {

struct Place {
  enum Kind { Interior, OnEdge, AtVertex } kind = Interior;
  std::size_t index = 0;  // edge or vertex
};

inline Place place_of(const SimplePolygon& poly, Point2 q) {
  if (const auto bp = poly.locate_on_boundary(q)) {
    if (bp->is_vertex()) return {Place::AtVertex, bp->edge};
    return {Place::OnEdge, bp->edge};
  }
  return {};
}

inline Place place_of(const BoundaryPoint& bp) {
  return bp.is_vertex() ? Place{Place::AtVertex, bp.edge} : Place{Place::OnEdge, bp.edge};
}

}  // namespace detail

// Default event budget is 10n.
inline Trajectory simulate(const SimplePolygon& poly, Point2 start, Point2 beacon, std::size_t budget = 0) {
  if (contains(poly, start) == Containment::Exterior || contains(poly, beacon) == Containment::Exterior)
    throw Error(ErrorCode::PointOutsidePolygon, "simulate: point outside polygon");
  if (budget == 0) budget = 10 * poly.size();
  const double eps = poly.eps();
  const double eps_dist = poly.tol().eps_dist;

  Trajectory tr{start, beacon, {}, Outcome::ReachedBeacon, start};
  Point2 x = start;
  detail::Place where = detail::place_of(poly, x);

  auto add = [&](MoveKind kind, Point2 to, std::size_t edge) {
    if (kind == MoveKind::Slide && !tr.edges.empty() && tr.edges.back().kind == MoveKind::Slide &&
        tr.edges.back().edge == edge) {
      tr.edges.back().to = to;
    } else {
      tr.edges.push_back({kind, x, to, edge});
    }
    x = to;
  };
  auto dead = [&]() {
    tr.outcome = Outcome::DeadPoint;
    tr.end = x;
    return tr;
  };

  // Slide along edge e toward the projection of the beacon, clamped to the edge.
  auto slide = [&](std::size_t e) -> bool {
    const Segment s = poly.edge(e);
    const Point2 dir = s.b - s.a;
    const double len2 = dot(dir, dir);
    const double th = dot(beacon - s.a, dir) / len2;
    const double tx = dot(x - s.a, dir) / len2;
    if (std::abs(th - tx) * std::sqrt(len2) <= eps_dist) return false;
    if (th >= 1.0 - eps_dist / std::sqrt(len2)) {
      add(MoveKind::Slide, s.b, e);
      where = {detail::Place::AtVertex, poly.next(e)};
    } else if (th <= eps_dist / std::sqrt(len2)) {
      add(MoveKind::Slide, s.a, e);
      where = {detail::Place::AtVertex, e};
    } else {
      add(MoveKind::Slide, s.a + th * dir, e);
      where = {detail::Place::OnEdge, e};
    }
    return true;
  };

  auto pull = [&]() {
    const Point2 d = beacon - x;
    const BoundaryPoint hit = ray_shoot(poly, x, d, GrazePolicy::Pass);
    if (dist(hit.point, x) >= norm(d) - eps_dist) {
      add(MoveKind::Pull, beacon, static_cast<std::size_t>(-1));
      where = detail::place_of(poly, beacon);
    } else {
      add(MoveKind::Pull, hit.point, static_cast<std::size_t>(-1));
      where = detail::place_of(hit);
    }
  };

  for (std::size_t events = 0;; ++events) {
    if (near(x, beacon, eps_dist)) {
      tr.outcome = Outcome::ReachedBeacon;
      tr.end = beacon;
      return tr;
    }
    if (events >= budget) throw Error(ErrorCode::BudgetExceeded, "simulate: event budget exhausted");
    const Point2 d = beacon - x;
    switch (where.kind) {
      case detail::Place::Interior:
        pull();
        break;
      case detail::Place::OnEdge: {
        const Segment s = poly.edge(where.index);
        if (side_of_line(s.a, s.b, beacon, eps) > 0) {
          pull();
        } else if (!slide(where.index)) {
          return dead();
        }
        break;
      }
      case detail::Place::AtVertex: {
        const std::size_t v = where.index;
        if (poly.points_inside_at_vertex(v, d, true)) {
          pull();
          break;
        }
        const Point2 to_next = normalized(poly.vertex(poly.next(v)) - x);
        const Point2 to_prev = normalized(poly.vertex(poly.prev(v)) - x);
        const double dn = dot(to_next, d), dp = dot(to_prev, d);
        if (std::max(dn, dp) <= eps_dist) return dead();
        if (!slide(dn >= dp ? v : poly.prev(v))) return dead();
        break;
      }
    }
  }
}

inline bool attracts(const SimplePolygon& poly, Point2 beacon, Point2 point) {
  return simulate(poly, point, beacon).outcome == Outcome::ReachedBeacon;
}

// Chord from reflex vertex r in direction beacon -> r, when the beacon lies in
// the deadwedge of r.
inline std::optional<Chord> split_edge(const SimplePolygon& poly, std::size_t r, Point2 beacon) {
  const Wedge w = deadwedge(poly, r);
  const Point2 apex = poly.vertex(r);
  if (!w.contains(beacon, poly.eps()) || near(beacon, apex, poly.eps())) return std::nullopt;
  const Point2 dir = apex - beacon;
  if (!poly.points_inside_at_vertex(r, dir, false)) return std::nullopt;
  return Chord{poly.vertex_point(r), ray_shoot(poly, apex, dir, GrazePolicy::Stop)};
}

struct SampleGrid {
  double resolution = 1.0;
  double margin = 0.0;
};

struct LabeledSample {
  Point2 point;
  bool attracted;
};

inline double distance_to_boundary(const SimplePolygon& poly, Point2 q) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Segment e = poly.edge(i);
    const Point2 d = e.b - e.a;
    const double t = std::clamp(dot(q - e.a, d) / dot(d, d), 0.0, 1.0);
    best = std::min(best, dist(q, e.a + t * d));
  }
  return best;
}

// Lattice points xmin + i*res strictly inside the bounding box, row by row.
inline std::vector<Point2> grid_points(const SimplePolygon& poly, const SampleGrid& grid) {
  if (!(grid.resolution > 0.0) || grid.margin < 0.0)
    throw Error(ErrorCode::DegenerateInput, "sample grid needs resolution > 0 and margin >= 0");
  const BBox b = poly.bbox();
  std::vector<Point2> out;
  for (long j = 1; b.ymin + j * grid.resolution < b.ymax; ++j)
    for (long i = 1; b.xmin + i * grid.resolution < b.xmax; ++i) {
      const Point2 q{b.xmin + i * grid.resolution, b.ymin + j * grid.resolution};
      if (contains(poly, q) != Containment::Interior) continue;
      if (distance_to_boundary(poly, q) <= grid.margin) continue;
      out.push_back(q);
    }
  return out;
}

// Each sample q is labeled with whether a beacon at q attracts p.
inline std::vector<LabeledSample> sample_inverse_attraction(const SimplePolygon& poly, Point2 p,
                                                             const SampleGrid& grid) {
  if (contains(poly, p) == Containment::Exterior) throw Error(ErrorCode::PointOutsidePolygon, "p outside polygon");
  std::vector<LabeledSample> out;
  for (Point2 q : grid_points(poly, grid)) out.push_back({q, attracts(poly, q, p)});
  return out;
}

}  // namespace beacon
