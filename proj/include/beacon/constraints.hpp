#pragma once

// Constraining half-planes of pruned shortest-path-tree edges, and the
// pointwise attraction test they induce.

#include <optional>
#include <vector>

#include "beacon/shortest_paths.hpp"

namespace beacon {

enum class CaseTag { Case1SideA, Case1SideB, Case2 };

struct CaseResult {
  bool case2 = false;
  std::size_t seen_edge = kNoVertex;  // polygon edge index, Case 2 only
};

struct ConstrainingHalfPlane {
  std::size_t parent = kSource;  // u: vertex index or kSource
  std::size_t vertex = 0;        // v
  Point2 u;
  CaseTag tag = CaseTag::Case2;
  HalfPlane plane;  // beacons strictly inside are constrained
  SubpolygonRef domain;
  std::size_t seen_edge = kNoVertex;

  Point2 v(const SimplePolygon& poly) const { return poly.vertex(vertex); }
};

namespace detail {

// Direction d leaves vertex `at` inside the CCW sector from a to b.
inline bool in_sector(Point2 a, Point2 b, Point2 d) {
  const double span = ccw_angle(a, b);
  const double x = ccw_angle(a, d);
  return x > kAngleEps && x < span - kAngleEps;
}

// Sector at a chord endpoint covered by a piece of the split polygon.
inline std::optional<std::pair<Point2, Point2>> piece_sector_at(const SimplePolygon& poly, const SubpolygonRef& piece,
                                                                 std::size_t vertex) {
  const std::size_t n = poly.size();
  if (piece.from.is_vertex() && piece.from.edge == vertex) {
    const Point2 at = poly.vertex(vertex);
    return std::pair{poly.vertex((vertex + 1) % n) - at, piece.to.point - at};
  }
  if (piece.to.is_vertex() && piece.to.edge == vertex) {
    const Point2 at = poly.vertex(vertex);
    return std::pair{piece.from.point - at, poly.vertex((vertex + n - 1) % n) - at};
  }
  return std::nullopt;
}

// The piece holding the points reached from `vertex` in direction d.
inline bool piece_contains_direction(const SimplePolygon& poly, const SubpolygonRef& piece, std::size_t vertex,
                                     Point2 d) {
  if (piece.contains_vertex(vertex)) return true;
  const auto sector = piece_sector_at(poly, piece, vertex);
  return sector && in_sector(sector->first, sector->second, d);
}

}  // namespace detail

// Case 2 when u lies strictly inside one of the deadwedge half-planes of v.
inline CaseResult classify_case(const SimplePolygon& poly, Point2 u, std::size_t v) {
  const double eps = poly.eps();
  const Wedge w = deadwedge(poly, v);
  const double d_prev = w.first.signed_distance(u), d_next = w.second.signed_distance(u);
  const bool in_prev = d_prev < -eps, in_next = d_next < -eps;
  if (!in_prev && !in_next) {
    if (d_prev <= eps || d_next <= eps) throw Error(ErrorCode::DegenerateOnBoundary, "parent on a deadwedge line");
    return {};
  }
  // the seen edge has u on the interior side of its supporting line
  const std::size_t e_prev = poly.prev(v), e_next = v;
  const Segment sp = poly.edge(e_prev), sn = poly.edge(e_next);
  const double side_prev = cross(normalized(sp.b - sp.a), u - sp.a);
  const double side_next = cross(normalized(sn.b - sn.a), u - sn.a);
  if (side_prev > eps && side_next > eps) return {true, side_prev >= side_next ? e_prev : e_next};
  if (side_prev > eps) return {true, e_prev};
  if (side_next > eps) return {true, e_next};
  // u on a supporting line: it sees that edge end to end
  if (side_prev >= -eps && side_next < -eps) return {true, e_prev};
  if (side_next >= -eps && side_prev < -eps) return {true, e_next};
  throw Error(ErrorCode::DegenerateOnBoundary, "seen edge is ambiguous");
}

inline std::vector<ConstrainingHalfPlane> constraining_halfplanes(const SimplePolygon& poly, const RayShooter& shooter,
                                                                  Point2 u, std::size_t parent, std::size_t v,
                                                                  bool tie_as_case1 = true) {
  const Point2 vp = poly.vertex(v);
  std::vector<ConstrainingHalfPlane> out;
  auto domain_away_from_u = [&](const Chord& chord) {
    const auto [first, second] = split(poly, chord, false);
    // u along an edge at v sits on the sector boundary, so ask the arc instead
    if (parent != kSource && first.contains_vertex(parent)) return second;
    if (parent != kSource && second.contains_vertex(parent)) return first;
    return detail::piece_contains_direction(poly, first, v, u - vp) ? second : first;
  };

  CaseResult cr;
  try {
    cr = classify_case(poly, u, v);
  } catch (const Error& e) {
    // a vertex parent stays put under perturbation of p; settle the tie as Case 1
    if (e.code() != ErrorCode::DegenerateOnBoundary || parent == kSource || !tie_as_case1) throw;
  }
  if (cr.case2) {
    const Wedge w = deadwedge(poly, v);
    const bool prev_edge = cr.seen_edge == poly.prev(v);
    const Point2 other = prev_edge ? poly.vertex(poly.prev(v)) : poly.vertex(poly.next(v));
    const Point2 dir = vp - other;  // extension of the seen edge past v
    const Chord chord{poly.vertex_point(v), shooter.from_vertex(v, dir, GrazePolicy::Stop)};
    out.push_back({parent, v, u, CaseTag::Case2, prev_edge ? w.first : w.second, domain_away_from_u(chord),
                   cr.seen_edge});
    return out;
  }

  const Point2 n = normalized(perp_left(vp - u));
  for (int side = 0; side < 2; ++side) {
    const Point2 dir = side == 0 ? n : -n;
    if (!poly.points_inside_at_vertex(v, dir, true)) continue;
    const Chord chord{poly.vertex_point(v), shooter.from_vertex(v, dir, GrazePolicy::Stop)};
    // constrained by the side of the line uv opposite to the ray
    const HalfPlane plane = side == 0 ? HalfPlane::left_of(vp, u) : HalfPlane::left_of(u, vp);
    out.push_back({parent, v, u, side == 0 ? CaseTag::Case1SideA : CaseTag::Case1SideB, plane,
                   domain_away_from_u(chord), kNoVertex});
  }
  return out;
}

inline std::vector<ConstrainingHalfPlane> all_constraints(const SimplePolygon& poly, const RayShooter& shooter,
                                                          const PrunedSpt& tree) {
  std::vector<ConstrainingHalfPlane> out;
  for (std::size_t v : tree.nodes) {
    auto cs = constraining_halfplanes(poly, shooter, tree.parent_point(poly, v), tree.parent[v], v);
    out.insert(out.end(), cs.begin(), cs.end());
  }
  return out;
}

// Point queries against a fixed constraint set: b attracts p unless some
// constraint holds b strictly inside its plane and inside its closed domain.
class TheoremOracle {
 public:
  TheoremOracle(const SimplePolygon& poly, std::vector<ConstrainingHalfPlane> constraints)
      : poly_(&poly), constraints_(std::move(constraints)) {
    for (const auto& c : constraints_) rings_.push_back(materialize_ring(poly, c.domain));
  }

  bool attracts(Point2 b) const {
    if (contains(*poly_, b) == Containment::Exterior) throw Error(ErrorCode::PointOutsidePolygon, "beacon outside polygon");
    const double eps = poly_->eps();
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      if (!constraints_[i].plane.strictly_contains(b, eps)) continue;
      if (contains(rings_[i], b, eps) != Containment::Exterior) return false;
    }
    return true;
  }

  const std::vector<ConstrainingHalfPlane>& constraints() const { return constraints_; }

 private:
  const SimplePolygon* poly_;
  std::vector<ConstrainingHalfPlane> constraints_;
  std::vector<std::vector<Point2>> rings_;
};

inline bool attracts_by_theorem(const SimplePolygon& poly, const std::vector<ConstrainingHalfPlane>& constraints,
                                Point2 b) {
  return TheoremOracle(poly, constraints).attracts(b);
}

}  // namespace beacon
