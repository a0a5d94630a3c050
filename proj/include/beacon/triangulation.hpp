#pragma once

// Polygon triangulation (monotone decomposition, with ear clipping as a simple
// baseline), its dual adjacency, and ray shooting by walking the triangles.

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "beacon/polygon.hpp"

namespace beacon {

enum class TriangulationMethod { MonotoneSweep, EarClipping };

struct Triangulation {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // CCW vertex index triples.
  std::vector<std::array<std::size_t, 3>> triangles;
  // neighbors[t][k] is across the edge (tri[k], tri[k+1]); kNone on the polygon boundary.
  std::vector<std::array<std::size_t, 3>> neighbors;
  // incident triangles per polygon vertex
  std::vector<std::vector<std::size_t>> fans;

  std::size_t size() const { return triangles.size(); }
};

namespace detail {

inline std::uint64_t edge_key(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

inline void build_adjacency(Triangulation& tri, std::size_t n) {
  const std::size_t m = tri.triangles.size();
  tri.neighbors.assign(m, {Triangulation::kNone, Triangulation::kNone, Triangulation::kNone});
  tri.fans.assign(n, {});
  std::unordered_map<std::uint64_t, std::pair<std::size_t, int>> open;
  open.reserve(3 * m);
  for (std::size_t t = 0; t < m; ++t) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = tri.triangles[t][k], b = tri.triangles[t][(k + 1) % 3];
      tri.fans[a].push_back(t);
      const auto key = edge_key(a, b);
      auto it = open.find(key);
      if (it == open.end()) {
        open.emplace(key, std::make_pair(t, k));
      } else {
        tri.neighbors[t][k] = it->second.first;
        tri.neighbors[it->second.first][it->second.second] = t;
        open.erase(it);
      }
    }
  }
}

// p is "below" q in sweep order: lower y, ties broken by larger x.
inline bool below(Point2 p, Point2 q) { return p.y < q.y || (p.y == q.y && p.x > q.x); }

// Diagonals that split the polygon into y-monotone pieces.
inline std::vector<std::pair<std::size_t, std::size_t>> monotone_diagonals(const SimplePolygon& poly) {
  const std::size_t n = poly.size();
  const auto& v = poly.vertices();
  enum class Kind { Start, End, Split, Merge, Regular };
  std::vector<Kind> kind(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = v[poly.prev(i)], b = v[i], c = v[poly.next(i)];
    const bool convex = cross(b - a, c - b) > 0.0;
    if (below(a, b) && below(c, b))
      kind[i] = convex ? Kind::Start : Kind::Split;
    else if (below(b, a) && below(b, c))
      kind[i] = convex ? Kind::End : Kind::Merge;
    else
      kind[i] = Kind::Regular;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below(v[b], v[a]); });

  // Status: edges e_i = (v_i, v_{i+1}) with the interior to their right, ordered
  // by x at the sweep line. Index n denotes the query point.
  double sweep_y = 0.0;
  Point2 query{};
  auto x_at = [&](std::size_t e) {
    if (e == n) return query.x;
    const Point2 a = v[e], b = v[poly.next(e)];
    if (a.y == b.y) return std::max(a.x, b.x);
    return a.x + (sweep_y - a.y) * (b.x - a.x) / (b.y - a.y);
  };
  auto cmp = [&](std::size_t e, std::size_t f) {
    if (e == f) return false;
    const double xe = x_at(e), xf = x_at(f);
    if (xe != xf) return xe < xf;
    return e < f;
  };
  std::set<std::size_t, decltype(cmp)> status(cmp);
  std::vector<std::set<std::size_t, decltype(cmp)>::iterator> where(n, status.end());
  std::vector<std::size_t> helper(n, n);
  std::vector<std::pair<std::size_t, std::size_t>> diagonals;

  auto insert = [&](std::size_t e, std::size_t h) {
    where[e] = status.insert(e).first;
    helper[e] = h;
  };
  auto erase = [&](std::size_t e) {
    if (where[e] != status.end()) {
      status.erase(where[e]);
      where[e] = status.end();
    }
  };
  auto left_of = [&](std::size_t i) -> std::size_t {
    query = v[i];
    auto it = status.upper_bound(n);
    if (it == status.begin()) return n;
    return *std::prev(it);
  };
  auto is_merge = [&](std::size_t h) { return h < n && kind[h] == Kind::Merge; };

  for (std::size_t i : order) {
    sweep_y = v[i].y;
    const std::size_t ep = poly.prev(i);  // e_{i-1}
    switch (kind[i]) {
      case Kind::Start:
        insert(i, i);
        break;
      case Kind::End:
        if (is_merge(helper[ep])) diagonals.emplace_back(i, helper[ep]);
        erase(ep);
        break;
      case Kind::Split: {
        const std::size_t ej = left_of(i);
        if (ej < n) {
          diagonals.emplace_back(i, helper[ej]);
          helper[ej] = i;
        }
        insert(i, i);
        break;
      }
      case Kind::Merge: {
        if (is_merge(helper[ep])) diagonals.emplace_back(i, helper[ep]);
        erase(ep);
        const std::size_t ej = left_of(i);
        if (ej < n) {
          if (is_merge(helper[ej])) diagonals.emplace_back(i, helper[ej]);
          helper[ej] = i;
        }
        break;
      }
      case Kind::Regular:
        if (below(v[poly.next(i)], v[i])) {  // interior to the right
          if (is_merge(helper[ep])) diagonals.emplace_back(i, helper[ep]);
          erase(ep);
          insert(i, i);
        } else {
          const std::size_t ej = left_of(i);
          if (ej < n) {
            if (is_merge(helper[ej])) diagonals.emplace_back(i, helper[ej]);
            helper[ej] = i;
          }
        }
        break;
    }
  }
  return diagonals;
}

// Faces of the polygon cut by non-crossing diagonals, as CCW index lists.
inline std::vector<std::vector<std::size_t>> split_by_diagonals(
    const SimplePolygon& poly, const std::vector<std::pair<std::size_t, std::size_t>>& diagonals) {
  const std::size_t n = poly.size();
  const auto& v = poly.vertices();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    adj[i].push_back(poly.next(i));
    adj[poly.next(i)].push_back(i);
  }
  for (auto [a, b] : diagonals) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // neighbours sorted counter-clockwise by angle
  for (std::size_t i = 0; i < n; ++i) {
    auto& nb = adj[i];
    std::sort(nb.begin(), nb.end(), [&](std::size_t a, std::size_t b) {
      const Point2 da = v[a] - v[i], db = v[b] - v[i];
      return std::atan2(da.y, da.x) < std::atan2(db.y, db.x);
    });
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  std::unordered_map<std::uint64_t, bool> used;
  auto dkey = [](std::size_t a, std::size_t b) { return (static_cast<std::uint64_t>(a) << 32) | b; };
  // the reversed polygon edges bound the outer face; never start or walk them
  for (std::size_t i = 0; i < n; ++i) used[dkey(poly.next(i), i)] = true;

  auto next_after = [&](std::size_t from, std::size_t at) {
    // outgoing edge immediately clockwise from at->from
    const auto& nb = adj[at];
    const auto it = std::find(nb.begin(), nb.end(), from);
    const std::size_t k = static_cast<std::size_t>(it - nb.begin());
    return nb[(k + nb.size() - 1) % nb.size()];
  };

  std::vector<std::vector<std::size_t>> faces;
  auto trace = [&](std::size_t a, std::size_t b) {
    if (used[dkey(a, b)]) return;
    std::vector<std::size_t> face;
    std::size_t from = a, at = b;
    used[dkey(a, b)] = true;
    face.push_back(a);
    while (at != a) {
      face.push_back(at);
      const std::size_t nx = next_after(from, at);
      used[dkey(at, nx)] = true;
      from = at;
      at = nx;
      if (face.size() > n + 1) break;  // malformed input; bail out
    }
    faces.push_back(std::move(face));
  };
  for (std::size_t i = 0; i < n; ++i) trace(i, poly.next(i));
  for (auto [a, b] : diagonals) {
    trace(a, b);
    trace(b, a);
  }
  return faces;
}

// Stack triangulation of a y-monotone CCW face.
inline void triangulate_monotone(const std::vector<Point2>& v, const std::vector<std::size_t>& face,
                                 std::vector<std::array<std::size_t, 3>>& out) {
  const std::size_t m = face.size();
  if (m < 3) return;
  if (m == 3) {
    out.push_back({face[0], face[1], face[2]});
    return;
  }
  std::size_t top = 0, bottom = 0;
  for (std::size_t k = 1; k < m; ++k) {
    if (below(v[face[top]], v[face[k]])) top = k;
    if (below(v[face[k]], v[face[bottom]])) bottom = k;
  }
  // CCW from the top walks down the left chain
  std::vector<char> on_left(m, 0);
  for (std::size_t k = top; k != bottom; k = (k + 1) % m) on_left[k] = 1;
  std::vector<std::size_t> sorted(m);
  for (std::size_t k = 0; k < m; ++k) sorted[k] = k;
  std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) { return below(v[face[b]], v[face[a]]); });

  auto emit = [&](std::size_t a, std::size_t b, std::size_t c) {
    const Point2 pa = v[face[a]], pb = v[face[b]], pc = v[face[c]];
    if (cross(pb - pa, pc - pa) > 0.0)
      out.push_back({face[a], face[b], face[c]});
    else
      out.push_back({face[a], face[c], face[b]});
  };

  std::vector<std::size_t> stack{sorted[0], sorted[1]};
  for (std::size_t j = 2; j + 1 < m; ++j) {
    const std::size_t u = sorted[j];
    if (on_left[u] != on_left[stack.back()]) {
      while (stack.size() > 1) {
        const std::size_t s1 = stack.back();
        stack.pop_back();
        emit(u, s1, stack.back());
      }
      stack.clear();
      stack.push_back(sorted[j - 1]);
      stack.push_back(u);
    } else {
      std::size_t last = stack.back();
      stack.pop_back();
      while (!stack.empty()) {
        const std::size_t s = stack.back();
        const Point2 pu = v[face[u]], pl = v[face[last]], ps = v[face[s]];
        // the diagonal u-s is inside when u, last, s turn away from the chain's side
        const double turn = cross(pl - pu, ps - pu);
        const bool inside = on_left[u] ? turn < 0.0 : turn > 0.0;
        if (!inside) break;
        emit(u, last, s);
        last = s;
        stack.pop_back();
      }
      stack.push_back(last);
      stack.push_back(u);
    }
  }
  const std::size_t u = sorted[m - 1];
  while (stack.size() > 1) {
    const std::size_t s1 = stack.back();
    stack.pop_back();
    emit(u, s1, stack.back());
  }
}

inline std::vector<std::array<std::size_t, 3>> ear_clip(const SimplePolygon& poly) {
  const auto& v = poly.vertices();
  std::vector<std::size_t> ring(poly.size());
  for (std::size_t i = 0; i < ring.size(); ++i) ring[i] = i;
  std::vector<std::array<std::size_t, 3>> out;
  auto in_triangle = [](Point2 p, Point2 a, Point2 b, Point2 c) {
    return cross(b - a, p - a) >= 0.0 && cross(c - b, p - b) >= 0.0 && cross(a - c, p - c) >= 0.0;
  };
  std::size_t guard = 0;
  std::size_t k = 0;
  while (ring.size() > 3) {
    const std::size_t m = ring.size();
    const std::size_t ia = ring[(k + m - 1) % m], ib = ring[k % m], ic = ring[(k + 1) % m];
    const Point2 a = v[ia], b = v[ib], c = v[ic];
    bool ear = cross(b - a, c - b) > 0.0;
    for (std::size_t q = 0; ear && q < m; ++q) {
      const std::size_t iq = ring[q];
      if (iq == ia || iq == ib || iq == ic) continue;
      if (in_triangle(v[iq], a, b, c)) ear = false;
    }
    if (ear || guard > 2 * m) {
      out.push_back({ia, ib, ic});
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(k % m));
      guard = 0;
      if (k >= ring.size()) k = 0;
    } else {
      k = (k + 1) % m;
      ++guard;
    }
  }
  out.push_back({ring[0], ring[1], ring[2]});
  return out;
}

}  // namespace detail

inline Triangulation triangulate(const SimplePolygon& poly,
                                 TriangulationMethod method = TriangulationMethod::MonotoneSweep) {
  Triangulation tri;
  if (method == TriangulationMethod::EarClipping) {
    tri.triangles = detail::ear_clip(poly);
  } else {
    const auto faces = detail::split_by_diagonals(poly, detail::monotone_diagonals(poly));
    for (const auto& f : faces) detail::triangulate_monotone(poly.vertices(), f, tri.triangles);
  }
  detail::build_adjacency(tri, poly.size());
  return tri;
}

// Ray shooting from polygon vertices (or interior points) by walking the
// triangulation; cost is proportional to the number of triangles crossed.
class RayShooter {
 public:
  RayShooter(const SimplePolygon& poly, const Triangulation& tri) : poly_(&poly), tri_(&tri) {}

  BoundaryPoint from_vertex(std::size_t v, Point2 dir, GrazePolicy policy = GrazePolicy::Stop) const {
    const SimplePolygon& P = *poly_;
    if (!P.points_inside_at_vertex(v, dir, false))
      throw Error(ErrorCode::RayExitsImmediately, "ray leaves the polygon at vertex " + std::to_string(v));
    const Point2 origin = P.vertex(v);
    const double eps = P.eps();
    for (std::size_t t : tri_->fans[v]) {
      const auto& T = tri_->triangles[t];
      int k = 0;
      while (T[k] != v) ++k;
      const std::size_t x = T[(k + 1) % 3], y = T[(k + 2) % 3];
      const int sx = side_of_line(origin, origin + dir, P.vertex(x), eps);
      const int sy = side_of_line(origin, origin + dir, P.vertex(y), eps);
      if (sx == 0 && dot(P.vertex(x) - origin, dir) > 0.0) return vertex_hit(x, dir, policy);
      if (sy == 0 && dot(P.vertex(y) - origin, dir) > 0.0) return vertex_hit(y, dir, policy);
      if (sx < 0 && sy > 0) return walk(origin, dir, t, (k + 1) % 3, policy);
    }
    throw Error(ErrorCode::DegenerateInput, "no triangle around vertex contains the ray direction");
  }

  BoundaryPoint from_point(Point2 origin, Point2 dir, GrazePolicy policy = GrazePolicy::Stop) const {
    const SimplePolygon& P = *poly_;
    const double eps = P.eps();
    for (std::size_t t = 0; t < tri_->size(); ++t) {
      const auto& T = tri_->triangles[t];
      const Point2 a = P.vertex(T[0]), b = P.vertex(T[1]), c = P.vertex(T[2]);
      if (cross(b - a, origin - a) < 0.0 || cross(c - b, origin - b) < 0.0 || cross(a - c, origin - c) < 0.0)
        continue;
      for (int k = 0; k < 3; ++k) {
        const Point2 p = P.vertex(T[k]);
        if (side_of_line(origin, origin + dir, p, eps) == 0 && dot(p - origin, dir) > eps)
          return vertex_hit(T[k], dir, policy);
      }
      for (int k = 0; k < 3; ++k) {
        const int s0 = side_of_line(origin, origin + dir, P.vertex(T[k]), eps);
        const int s1 = side_of_line(origin, origin + dir, P.vertex(T[(k + 1) % 3]), eps);
        if (s0 < 0 && s1 > 0) return walk(origin, dir, t, k, policy);
      }
    }
    throw Error(ErrorCode::PointOutsidePolygon, "ray origin not inside any triangle");
  }

 private:
  BoundaryPoint vertex_hit(std::size_t w, Point2 dir, GrazePolicy policy) const {
    if (policy == GrazePolicy::Pass && poly_->points_inside_at_vertex(w, dir, true))
      return from_vertex(w, dir, policy);
    return poly_->vertex_point(w);
  }

  // Crosses edge k of triangle t (its first vertex right of the ray, second left).
  BoundaryPoint walk(Point2 origin, Point2 dir, std::size_t t, int k, GrazePolicy policy) const {
    const SimplePolygon& P = *poly_;
    const double eps = P.eps();
    const std::size_t n = P.size();
    std::size_t right = tri_->triangles[t][k], left = tri_->triangles[t][(k + 1) % 3];
    for (std::size_t guard = 0; guard <= tri_->size(); ++guard) {
      const std::size_t nb = tri_->neighbors[t][k];
      if (nb == Triangulation::kNone) {
        // polygon edge; interior is on its left so it runs left -> right
        const std::size_t e = (left + 1) % n == right ? left : right;
        const Point2 a = P.vertex(e), b = P.vertex(P.next(e));
        const Point2 hit = line_intersection(origin, dir, a, b - a);
        const double s = std::clamp(dot(hit - a, b - a) / dot(b - a, b - a), 0.0, 1.0);
        BoundaryPoint bp = P.boundary_point(e, s);
        if (near(bp.point, a, eps)) return P.vertex_point(e);
        if (near(bp.point, b, eps)) return P.vertex_point(P.next(e));
        return bp;
      }
      const auto& T = tri_->triangles[nb];
      int j = 0;
      while (T[j] == right || T[j] == left) ++j;
      const std::size_t c = T[j];
      const int sc = side_of_line(origin, origin + dir, P.vertex(c), eps);
      if (sc == 0) return vertex_hit(c, dir, policy);
      t = nb;
      if (sc > 0) {
        left = c;
      } else {
        right = c;
      }
      // locate the edge (right, left) inside the new triangle
      for (k = 0; k < 3; ++k)
        if (T[k] == right && T[(k + 1) % 3] == left) break;
    }
    throw Error(ErrorCode::DegenerateInput, "triangulation walk did not terminate");
  }

  const SimplePolygon* poly_;
  const Triangulation* tri_;
};

}  // namespace beacon
