#pragma once

// Invariant checks over simulated trajectories.

#include <cmath>
#include <vector>

#include "beacon/attraction.hpp"
#include "beacon/shortest_paths.hpp"

namespace beacon {

struct AuditReport {
  std::size_t trajectories = 0;
  std::size_t distance_violations = 0;
  std::size_t angle_violations = 0;
  std::size_t geodesic_violations = 0;
  std::size_t deadpoint_violations = 0;

  std::size_t total() const {
    return distance_violations + angle_violations + geodesic_violations + deadpoint_violations;
  }
  AuditReport& operator+=(const AuditReport& o) {
    trajectories += o.trajectories;
    distance_violations += o.distance_violations;
    angle_violations += o.angle_violations;
    geodesic_violations += o.geodesic_violations;
    deadpoint_violations += o.deadpoint_violations;
    return *this;
  }
};

// Stationarity at a dead point: the pull leaves the polygon and no boundary
// direction at the point decreases the distance to the beacon.
inline bool certify_dead_point(const SimplePolygon& poly, Point2 d, Point2 beacon, double tol) {
  const auto bp = poly.locate_on_boundary(d);
  if (!bp) return false;
  const Point2 g = beacon - d;
  if (norm(g) <= tol) return false;
  if (poly.points_inside(*bp, g, true)) return false;
  const double scale = norm(g);
  if (bp->is_vertex()) {
    const std::size_t v = bp->edge;
    return dot(normalized(poly.vertex(poly.next(v)) - d), g) <= tol * scale &&
           dot(normalized(poly.vertex(poly.prev(v)) - d), g) <= tol * scale;
  }
  const Segment e = poly.edge(bp->edge);
  return std::abs(dot(normalized(e.b - e.a), g)) <= tol * scale;
}

inline AuditReport audit_trajectory(const SimplePolygon& poly, const Triangulation& tri, const Trajectory& tr,
                                    double tol = 1e-7) {
  AuditReport rep;
  rep.trajectories = 1;
  std::vector<Point2> events{tr.start};
  for (const TrajectoryEdge& e : tr.edges) events.push_back(e.to);

  for (std::size_t k = 0; k + 1 < events.size(); ++k) {
    const double a = dist(events[k], tr.beacon), b = dist(events[k + 1], tr.beacon);
    if (!(b < a + tol) || near(events[k], events[k + 1], 0.0)) ++rep.distance_violations;
  }
  for (std::size_t k = 0; k + 1 < tr.edges.size(); ++k) {
    const TrajectoryEdge& e = tr.edges[k];
    const TrajectoryEdge& f = tr.edges[k + 1];
    if (e.kind == f.kind) continue;
    const double c = dot(normalized(e.to - e.from), normalized(f.to - f.from));
    if (c < -tol) ++rep.angle_violations;
  }
  if (events.size() > 1) {
    const std::vector<Point2> queries(events.begin() + 1, events.end());
    const ShortestPathTree spt = shortest_path_tree(poly, tri, tr.start, queries);
    double prev = 0.0;
    for (double g : spt.query_distance) {
      if (g < prev - tol) ++rep.geodesic_violations;
      prev = std::max(prev, g);
    }
  }
  if (tr.outcome == Outcome::DeadPoint && !certify_dead_point(poly, tr.end, tr.beacon, tol))
    ++rep.deadpoint_violations;
  return rep;
}

}  // namespace beacon
