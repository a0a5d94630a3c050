#pragma once

// Shortest path tree from a point (funnel algorithm over the triangulation
// dual), geodesics, the pruned tree over reflex vertices, and the shortest
// path map as the faces cut out by the windows.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

#include "beacon/polygon.hpp"
#include "beacon/triangulation.hpp"

namespace beacon {

inline constexpr std::size_t kSource = static_cast<std::size_t>(-2);
inline constexpr std::size_t kNoVertex = static_cast<std::size_t>(-1);

struct ShortestPathTree {
  Point2 source;
  // Per polygon vertex: parent vertex index or kSource.
  std::vector<std::size_t> parent;
  std::vector<double> distance;
  // Per query point: parent vertex index or kSource, and geodesic length.
  std::vector<std::size_t> query_parent;
  std::vector<double> query_distance;
  // Vertex coinciding with the source, if any.
  std::size_t source_vertex = kNoVertex;
};

namespace detail {

// Index of a triangle containing q (closed), or kNone.
inline std::size_t locate_triangle(const SimplePolygon& poly, const Triangulation& tri, Point2 q) {
  const double eps = poly.eps();
  std::size_t best = Triangulation::kNone;
  double best_slack = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < tri.size(); ++t) {
    const auto& T = tri.triangles[t];
    double slack = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
      const Point2 a = poly.vertex(T[k]), b = poly.vertex(T[(k + 1) % 3]);
      slack = std::min(slack, cross(normalized(b - a), q - a));
    }
    if (slack >= -eps && slack > best_slack) {
      best_slack = slack;
      best = t;
    }
  }
  return best;
}

}  // namespace detail

inline ShortestPathTree shortest_path_tree(const SimplePolygon& poly, const Triangulation& tri, Point2 source,
                                           const std::vector<Point2>& queries = {}) {
  const std::size_t n = poly.size();
  const double eps = poly.eps();
  ShortestPathTree spt;
  spt.source = source;
  spt.parent.assign(n, kNoVertex);
  spt.distance.assign(n, std::numeric_limits<double>::infinity());
  spt.query_parent.assign(queries.size(), kNoVertex);
  spt.query_distance.assign(queries.size(), std::numeric_limits<double>::infinity());

  const std::size_t t0 = detail::locate_triangle(poly, tri, source);
  if (t0 == Triangulation::kNone) throw Error(ErrorCode::PointOutsidePolygon, "source outside polygon");

  for (std::size_t i = 0; i < n; ++i)
    if (near(poly.vertex(i), source, eps)) spt.source_vertex = i;

  std::vector<std::vector<std::size_t>> queries_in(tri.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const std::size_t t = detail::locate_triangle(poly, tri, queries[q]);
    if (t == Triangulation::kNone) throw Error(ErrorCode::PointOutsidePolygon, "query point outside polygon");
    queries_in[t].push_back(q);
  }

  // ids: vertices 0..n-1, source n
  const std::size_t src = n;
  auto pt = [&](std::size_t id) { return id == src ? source : poly.vertex(id); };
  auto as_parent = [&](std::size_t id) { return id == src ? kSource : id; };
  auto dist_of = [&](std::size_t id) { return id == src ? 0.0 : spt.distance[id]; };

  const auto& T0 = tri.triangles[t0];
  for (std::size_t v : T0) {
    if (v == spt.source_vertex) {
      spt.parent[v] = kSource;
      spt.distance[v] = 0.0;
    } else {
      spt.parent[v] = kSource;
      spt.distance[v] = dist(source, poly.vertex(v));
    }
  }
  for (std::size_t q : queries_in[t0]) {
    spt.query_parent[q] = kSource;
    spt.query_distance[q] = dist(source, queries[q]);
  }

  // Funnel in F[lo..hi], apex at ap; F[lo] and F[hi] are the endpoints of the
  // diagonal being crossed, the funnel lies to its right.
  std::vector<std::size_t> F(2 * n + 8, 0);
  const std::size_t origin = n + 4;

  // first funnel index whose wedge contains c
  auto tangent = [&](std::size_t lo, std::size_t hi, std::size_t ap, Point2 c) {
    auto go_right = [&](std::size_t i) {
      const Point2 a = pt(F[i]), b = pt(F[i + 1]);
      // collinear ties resolve toward the apex
      const double side = cross(b - a, c - a);
      return i < ap ? side >= 0.0 : side < 0.0;
    };
    std::size_t L = lo, R = hi;  // answer in [L, R]
    while (L < R) {
      const std::size_t mid = (L + R) / 2;
      if (go_right(mid))
        L = mid + 1;
      else
        R = mid;
    }
    return L;
  };

  struct Frame {
    std::size_t tri;
    int entry;  // triangle edge (tri[entry], tri[entry+1]) is the crossed diagonal
    std::size_t lo, hi, ap;
    std::size_t t = 0;
    std::size_t c = 0;
    std::size_t saved = 0;
    int phase = 0;
  };
  std::vector<Frame> stack;

  auto push_child = [&](std::size_t from_tri, int edge, std::size_t lo, std::size_t hi, std::size_t ap) {
    const std::size_t nb = tri.neighbors[from_tri][edge];
    if (nb == Triangulation::kNone) return false;
    const auto& T = tri.triangles[from_tri];
    const std::size_t a = T[(edge + 1) % 3], b = T[edge];  // CCW edge of the neighbour
    const auto& N = tri.triangles[nb];
    int k = 0;
    while (!(N[k] == a && N[(k + 1) % 3] == b)) ++k;
    stack.push_back({nb, k, lo, hi, ap});
    return true;
  };

  for (int k = 0; k < 3; ++k) {
    const std::size_t a = T0[(k + 1) % 3], b = T0[k];
    std::size_t lo = origin, ap, hi;
    if (a == spt.source_vertex) {
      F[lo] = src;
      F[lo + 1] = b;
      ap = lo;
      hi = lo + 1;
    } else if (b == spt.source_vertex) {
      F[lo] = a;
      F[lo + 1] = src;
      ap = hi = lo + 1;
    } else {
      F[lo] = a;
      F[lo + 1] = src;
      F[lo + 2] = b;
      ap = lo + 1;
      hi = lo + 2;
    }
    if (!push_child(t0, k, lo, hi, ap)) continue;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& T = tri.triangles[f.tri];
      if (f.phase == 0) {
        f.c = T[(f.entry + 2) % 3];
        const Point2 cp = poly.vertex(f.c);
        f.t = tangent(f.lo, f.hi, f.ap, cp);
        const std::size_t par = F[f.t];
        spt.parent[f.c] = as_parent(par);
        spt.distance[f.c] = dist_of(par) + dist(pt(par), cp);
        for (std::size_t q : queries_in[f.tri]) {
          const std::size_t qt = tangent(f.lo, f.hi, f.ap, queries[q]);
          spt.query_parent[q] = as_parent(F[qt]);
          spt.query_distance[q] = dist_of(F[qt]) + dist(pt(F[qt]), queries[q]);
        }
        // child across (c, a): funnel F[lo..t] + c
        f.phase = 1;
        f.saved = F[f.t + 1];
        F[f.t + 1] = f.c;
        const Frame copy = f;
        if (!push_child(copy.tri, (copy.entry + 2) % 3, copy.lo, copy.t + 1, std::min(copy.ap, copy.t)))
          stack.back().phase = 1;  // nothing pushed; fall through next iteration
        continue;
      }
      if (f.phase == 1) {
        F[f.t + 1] = f.saved;
        // child across (b, c): funnel c + F[t..hi]
        f.phase = 2;
        f.saved = F[f.t - 1];
        F[f.t - 1] = f.c;
        const Frame copy = f;
        push_child(copy.tri, (copy.entry + 1) % 3, copy.t - 1, copy.hi, std::max(copy.ap, copy.t));
        continue;
      }
      F[f.t - 1] = f.saved;
      stack.pop_back();
    }
  }
  return spt;
}

struct GeodesicPath {
  std::vector<Point2> points;  // source first
  std::vector<std::size_t> vertices;  // polygon vertex indices of interior points
  double length = 0.0;
};

inline GeodesicPath geodesic(const SimplePolygon& poly, const Triangulation& tri, Point2 a, Point2 b) {
  if (contains(poly, a) == Containment::Exterior || contains(poly, b) == Containment::Exterior)
    throw Error(ErrorCode::PointOutsidePolygon, "geodesic endpoint outside polygon");
  const ShortestPathTree spt = shortest_path_tree(poly, tri, a, {b});
  GeodesicPath path;
  path.length = spt.query_distance[0];
  std::vector<Point2> rev{b};
  std::vector<std::size_t> rev_ids;
  for (std::size_t v = spt.query_parent[0]; v != kSource; v = spt.parent[v]) {
    if (v == spt.source_vertex) break;
    rev.push_back(poly.vertex(v));
    rev_ids.push_back(v);
  }
  rev.push_back(a);
  path.points.assign(rev.rbegin(), rev.rend());
  path.vertices.assign(rev_ids.rbegin(), rev_ids.rend());
  return path;
}

inline GeodesicPath geodesic(const SimplePolygon& poly, Point2 a, Point2 b) {
  return geodesic(poly, triangulate(poly), a, b);
}

struct PrunedSpt {
  Point2 root;
  // reflex vertices in the tree, in increasing geodesic distance
  std::vector<std::size_t> nodes;
  // indexed by polygon vertex; kNoVertex for vertices not in the tree
  std::vector<std::size_t> parent;
  std::vector<double> distance;

  bool contains(std::size_t v) const { return v < parent.size() && parent[v] != kNoVertex; }
  Point2 parent_point(const SimplePolygon& poly, std::size_t v) const {
    return parent[v] == kSource ? root : poly.vertex(parent[v]);
  }
};

inline PrunedSpt prune(const SimplePolygon& poly, const ShortestPathTree& spt) {
  PrunedSpt out;
  out.root = spt.source;
  const std::size_t n = poly.size();
  out.parent.assign(n, kNoVertex);
  out.distance.assign(n, std::numeric_limits<double>::infinity());
  auto keep = [&](std::size_t v) { return v != spt.source_vertex && poly.is_reflex(v); };
  for (std::size_t v = 0; v < n; ++v) {
    if (!keep(v)) continue;
    std::size_t up = spt.parent[v];
    while (up != kSource && up != kNoVertex && !keep(up)) up = up == spt.source_vertex ? kSource : spt.parent[up];
    out.parent[v] = up == kNoVertex ? kSource : up;
    out.distance[v] = spt.distance[v];
    out.nodes.push_back(v);
  }
  std::sort(out.nodes.begin(), out.nodes.end(),
            [&](std::size_t a, std::size_t b) { return out.distance[a] < out.distance[b]; });
  return out;
}

inline PrunedSpt pruned_spt(const SimplePolygon& poly, const Triangulation& tri, Point2 p) {
  return prune(poly, shortest_path_tree(poly, tri, p));
}

inline PrunedSpt pruned_spt(const SimplePolygon& poly, Point2 p) { return pruned_spt(poly, triangulate(poly), p); }

struct Window {
  std::size_t base;  // reflex vertex
  BoundaryPoint end;
  Chord chord(const SimplePolygon& poly) const { return {poly.vertex_point(base), end}; }
};

struct SpmRegion {
  std::size_t base = kSource;  // kSource for the root region
  std::optional<Window> window;
  std::vector<Point2> cell;  // CCW ring
  // per cell edge (cell[i], cell[i+1]): owning window's base, or kNoVertex for polygon boundary
  std::vector<std::size_t> edge_window;
};

struct ShortestPathMap {
  PrunedSpt tree;
  std::vector<Window> windows;
  std::vector<SpmRegion> regions;  // regions[0] is the root
};

// Windows are the extensions of pruned-tree edges past their child vertex.
inline std::vector<Window> compute_windows(const SimplePolygon& poly, const RayShooter& shooter,
                                           const PrunedSpt& tree) {
  std::vector<Window> out;
  for (std::size_t v : tree.nodes) {
    const Point2 d = poly.vertex(v) - tree.parent_point(poly, v);
    if (!poly.points_inside_at_vertex(v, d, true)) continue;
    out.push_back({v, shooter.from_vertex(v, d, GrazePolicy::Stop)});
  }
  return out;
}

namespace detail {

// Faces of the polygon cut by non-crossing chords from vertices to boundary points.
struct ChordArrangement {
  std::vector<Point2> nodes;
  std::vector<std::vector<std::size_t>> faces;          // node ids, CCW
  std::vector<std::vector<std::size_t>> face_edge_tag;  // chord id or kNoVertex per face edge
  // face to the left of chord c traversed start->end / end->start
  std::vector<std::size_t> left_forward, left_backward;
};

inline ChordArrangement arrange_chords(const SimplePolygon& poly, const std::vector<Chord>& chords) {
  const std::size_t n = poly.size();
  const double eps = poly.eps();
  ChordArrangement arr;
  arr.nodes = poly.vertices();

  // boundary stops per edge: (t, node)
  std::vector<std::vector<std::pair<double, std::size_t>>> stops(n);
  auto node_for = [&](const BoundaryPoint& bp) -> std::size_t {
    if (bp.is_vertex()) return bp.edge;
    auto& s = stops[bp.edge];
    for (const auto& [t, id] : s)
      if (near(arr.nodes[id], bp.point, eps)) return id;
    arr.nodes.push_back(bp.point);
    s.emplace_back(bp.t, arr.nodes.size() - 1);
    return arr.nodes.size() - 1;
  };
  struct HalfEdge {
    std::size_t from, to, tag;
    bool forward;
  };
  std::vector<HalfEdge> half;
  std::vector<std::pair<std::size_t, std::size_t>> chord_nodes;
  for (const Chord& c : chords) chord_nodes.emplace_back(node_for(c.start), node_for(c.end));

  for (std::size_t e = 0; e < n; ++e) {
    auto& s = stops[e];
    std::sort(s.begin(), s.end());
    std::size_t prev = e;
    for (const auto& [t, id] : s) {
      half.push_back({prev, id, kNoVertex, true});
      prev = id;
    }
    half.push_back({prev, (e + 1) % n, kNoVertex, true});
  }
  const std::size_t first_chord = half.size();
  for (std::size_t c = 0; c < chords.size(); ++c) {
    half.push_back({chord_nodes[c].first, chord_nodes[c].second, c, true});
    half.push_back({chord_nodes[c].second, chord_nodes[c].first, c, false});
  }

  const std::size_t m = arr.nodes.size();
  std::vector<std::vector<std::size_t>> out(m);
  for (std::size_t h = 0; h < half.size(); ++h) out[half[h].from].push_back(h);

  auto angle_of = [&](std::size_t h) {
    const Point2 d = arr.nodes[half[h].to] - arr.nodes[half[h].from];
    return std::atan2(d.y, d.x);
  };
  auto next_of = [&](std::size_t h) {
    const auto& cand = out[half[h].to];
    if (cand.size() == 1) return cand[0];
    const Point2 ref = arr.nodes[half[h].from] - arr.nodes[half[h].to];
    std::size_t best = cand[0];
    double best_angle = 10.0;
    for (std::size_t g : cand) {
      const Point2 d = arr.nodes[half[g].to] - arr.nodes[half[g].from];
      double a = ccw_angle(d, ref);  // clockwise sweep from ref to d
      if (a <= 1e-14) a = 2.0 * std::numbers::pi;  // the twin, only as a last resort
      if (a < best_angle) {
        best_angle = a;
        best = g;
      }
    }
    return best;
  };
  (void)angle_of;

  arr.left_forward.assign(chords.size(), kNoVertex);
  arr.left_backward.assign(chords.size(), kNoVertex);
  std::vector<char> used(half.size(), 0);
  for (std::size_t h0 = 0; h0 < half.size(); ++h0) {
    if (used[h0]) continue;
    std::vector<std::size_t> face, tags;
    std::size_t h = h0;
    const std::size_t face_id = arr.faces.size();
    while (!used[h]) {
      used[h] = 1;
      face.push_back(half[h].from);
      tags.push_back(half[h].tag);
      if (h >= first_chord) {
        if (half[h].forward)
          arr.left_forward[half[h].tag] = face_id;
        else
          arr.left_backward[half[h].tag] = face_id;
      }
      h = next_of(h);
    }
    arr.faces.push_back(std::move(face));
    arr.face_edge_tag.push_back(std::move(tags));
  }
  return arr;
}

}  // namespace detail

inline ShortestPathMap shortest_path_map(const SimplePolygon& poly, const Triangulation& tri, Point2 p) {
  ShortestPathMap spm;
  spm.tree = pruned_spt(poly, tri, p);
  const RayShooter shooter(poly, tri);
  spm.windows = compute_windows(poly, shooter, spm.tree);

  std::vector<Chord> chords;
  for (const Window& w : spm.windows) chords.push_back(w.chord(poly));
  const auto arr = detail::arrange_chords(poly, chords);

  std::vector<std::size_t> base_of(arr.faces.size(), kSource);
  std::vector<std::size_t> window_of(arr.faces.size(), kNoVertex);
  for (std::size_t c = 0; c < spm.windows.size(); ++c) {
    const std::size_t v = spm.windows[c].base;
    const Point2 d = poly.vertex(v) - spm.tree.parent_point(poly, v);
    // the cell behind v lies on the side of the window holding v's incident edges
    const bool left = cross(d, poly.vertex(poly.next(v)) - poly.vertex(v)) + cross(d, poly.vertex(poly.prev(v)) - poly.vertex(v)) > 0.0;
    const std::size_t f = left ? arr.left_forward[c] : arr.left_backward[c];
    base_of[f] = v;
    window_of[f] = c;
  }

  std::size_t root = kNoVertex;
  for (std::size_t f = 0; f < arr.faces.size(); ++f)
    if (base_of[f] == kSource) root = f;

  auto make_region = [&](std::size_t f) {
    SpmRegion r;
    r.base = base_of[f];
    if (window_of[f] != kNoVertex) r.window = spm.windows[window_of[f]];
    for (std::size_t id : arr.faces[f]) r.cell.push_back(arr.nodes[id]);
    for (std::size_t tag : arr.face_edge_tag[f]) r.edge_window.push_back(tag == kNoVertex ? kNoVertex : spm.windows[tag].base);
    return r;
  };
  if (root != kNoVertex) spm.regions.push_back(make_region(root));
  for (std::size_t f = 0; f < arr.faces.size(); ++f)
    if (f != root) spm.regions.push_back(make_region(f));
  return spm;
}

inline ShortestPathMap shortest_path_map(const SimplePolygon& poly, Point2 p) {
  return shortest_path_map(poly, triangulate(poly), p);
}

}  // namespace beacon
