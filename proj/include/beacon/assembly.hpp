#pragma once

// Union of per-cell pieces (free convex region ∩ cell) into boundary rings.
// Pieces only meet along windows, so the union boundary is the set of piece
// boundary segments with window overlaps cancelled.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "beacon/shortest_paths.hpp"

namespace beacon {

// Free region of one cell: nullopt means unconstrained.
using FreeRegion = std::optional<std::vector<Point2>>;

namespace detail {

struct DirectedSegment {
  Point2 a, b;
  std::size_t window = kNoVertex;
};

// Parameter range of a->b inside the closed convex polygon, with segments lying
// within eps of an edge line counted as inside.
inline std::optional<std::pair<double, double>> clip_tolerant(Point2 a, Point2 b, const std::vector<Point2>& convex,
                                                              double eps) {
  double t0 = 0.0, t1 = 1.0;
  const std::size_t m = convex.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 p = convex[i];
    const Point2 e = normalized(convex[(i + 1) % m] - p);
    const double da = cross(e, a - p), db = cross(e, b - p);
    if (da >= -eps && db >= -eps) continue;
    if (da < -eps && db < -eps) return std::nullopt;
    const double t = da / (da - db);
    if (da < 0.0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 > t1) return std::nullopt;
  }
  return std::make_pair(t0, t1);
}

// Index of the convex edge that m lies on, or npos when m is strictly inside.
inline std::size_t boundary_edge_of(const std::vector<Point2>& convex, Point2 m, double eps) {
  std::size_t best = static_cast<std::size_t>(-1);
  double best_d = eps;
  for (std::size_t i = 0; i < convex.size(); ++i) {
    const Point2 p = convex[i];
    const double d = std::abs(cross(normalized(convex[(i + 1) % convex.size()] - p), m - p));
    if (d <= best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

inline void collect_piece(const SpmRegion& region, const FreeRegion& free, double eps,
                          std::vector<DirectedSegment>& out) {
  const auto& ring = region.cell;
  const std::size_t m = ring.size();
  if (!free) {
    for (std::size_t k = 0; k < m; ++k) out.push_back({ring[k], ring[(k + 1) % m], region.edge_window[k]});
    return;
  }
  const auto& F = *free;
  if (F.size() < 3) return;

  for (std::size_t k = 0; k < m; ++k) {
    const Point2 a = ring[k], b = ring[(k + 1) % m];
    const auto clip = clip_tolerant(a, b, F, eps);
    if (!clip) continue;
    const double len = dist(a, b);
    if ((clip->second - clip->first) * len <= eps) continue;
    const Point2 mid = lerp(a, b, 0.5 * (clip->first + clip->second));
    const std::size_t on = boundary_edge_of(F, mid, eps);
    if (on != static_cast<std::size_t>(-1) && dot(b - a, F[(on + 1) % F.size()] - F[on]) <= 0.0) continue;
    out.push_back({lerp(a, b, clip->first), lerp(a, b, clip->second), region.edge_window[k]});
  }

  const BBox cell_box = BBox::of(ring).inflated(eps);
  for (std::size_t j = 0; j < F.size(); ++j) {
    const Point2 fa = F[j], fb = F[(j + 1) % F.size()];
    const BBox fbox = BBox::of(std::vector<Point2>{fa, fb});
    if (fbox.xmax < cell_box.xmin || fbox.xmin > cell_box.xmax || fbox.ymax < cell_box.ymin ||
        fbox.ymin > cell_box.ymax)
      continue;
    const Point2 d = fb - fa;
    const double len2 = dot(d, d);
    if (len2 <= eps * eps) continue;
    std::vector<double> ts{0.0, 1.0};
    for (std::size_t k = 0; k < m; ++k) {
      const auto hit = segment_intersection({fa, fb}, {ring[k], ring[(k + 1) % m]}, eps);
      if (const Point2* p = std::get_if<Point2>(&hit)) {
        ts.push_back(dot(*p - fa, d) / len2);
      } else if (const Segment* s = std::get_if<Segment>(&hit)) {
        ts.push_back(dot(s->a - fa, d) / len2);
        ts.push_back(dot(s->b - fa, d) / len2);
      }
    }
    std::sort(ts.begin(), ts.end());
    const double len = std::sqrt(len2);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      const double lo = std::clamp(ts[i], 0.0, 1.0), hi = std::clamp(ts[i + 1], 0.0, 1.0);
      if ((hi - lo) * len <= eps) continue;
      if (contains(ring, lerp(fa, fb, 0.5 * (lo + hi)), eps) != Containment::Interior) continue;
      out.push_back({lerp(fa, fb, lo), lerp(fa, fb, hi), kNoVertex});
    }
  }
}

// Replaces the segments on each window by their net coverage.
inline std::vector<DirectedSegment> cancel_windows(const SimplePolygon& poly, const std::vector<Window>& windows,
                                                   std::vector<DirectedSegment> segs, double eps) {
  std::map<std::size_t, Point2> window_end;
  for (const Window& w : windows) window_end[w.base] = w.end.point;
  std::vector<DirectedSegment> out;
  std::map<std::size_t, std::vector<DirectedSegment>> by_window;
  for (auto& s : segs) {
    if (s.window == kNoVertex)
      out.push_back(s);
    else
      by_window[s.window].push_back(s);
  }
  for (auto& [w, list] : by_window) {
    const Point2 V = poly.vertex(w), Z = window_end.at(w);
    const Point2 d = Z - V;
    const double len2 = dot(d, d), len = std::sqrt(len2);
    struct Iv {
      double lo, hi;
      int sign;
    };
    std::vector<Iv> ivs;
    std::vector<double> bps;
    for (const auto& s : list) {
      const double ta = dot(s.a - V, d) / len2, tb = dot(s.b - V, d) / len2;
      ivs.push_back({std::min(ta, tb), std::max(ta, tb), tb > ta ? 1 : -1});
      bps.push_back(ta);
      bps.push_back(tb);
    }
    std::sort(bps.begin(), bps.end());
    std::vector<double> uniq;
    for (double t : bps)
      if (uniq.empty() || (t - uniq.back()) * len > eps) uniq.push_back(t);
    for (std::size_t i = 0; i + 1 < uniq.size(); ++i) {
      const double mid = 0.5 * (uniq[i] + uniq[i + 1]);
      int net = 0;
      for (const Iv& iv : ivs)
        if (iv.lo < mid && mid < iv.hi) net += iv.sign;
      if (net == 0) continue;
      const Point2 p = V + uniq[i] * d, q = V + uniq[i + 1] * d;
      out.push_back(net > 0 ? DirectedSegment{p, q, kNoVertex} : DirectedSegment{q, p, kNoVertex});
    }
  }
  return out;
}

// Clusters points closer than eps; returns a node id per input point and node positions.
inline std::vector<std::size_t> snap_points(const std::vector<Point2>& pts, double eps, std::vector<Point2>& nodes) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const double h = 2.0 * eps;
  auto key = [&](long gx, long gy) { return (static_cast<unsigned long long>(gx) << 32) ^ static_cast<unsigned long long>(gy & 0xffffffff); };
  std::unordered_map<unsigned long long, std::vector<std::size_t>> grid;
  for (std::size_t i = 0; i < n; ++i) {
    const long gx = static_cast<long>(std::floor(pts[i].x / h)), gy = static_cast<long>(std::floor(pts[i].y / h));
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy) {
        auto it = grid.find(key(gx + dx, gy + dy));
        if (it == grid.end()) continue;
        for (std::size_t j : it->second)
          if (dist(pts[i], pts[j]) <= eps) parent[find(i)] = find(j);
      }
    grid[key(gx, gy)].push_back(i);
  }
  std::vector<std::size_t> id(n);
  std::unordered_map<std::size_t, std::size_t> root_id;
  nodes.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    auto [it, fresh] = root_id.emplace(r, nodes.size());
    if (fresh) nodes.push_back(pts[r]);
    id[i] = it->second;
  }
  return id;
}

inline std::vector<Point2> drop_collinear(const std::vector<Point2>& ring, double eps) {
  // b is redundant when it sits on the segment a-c
  auto redundant = [eps](Point2 a, Point2 b, Point2 c) {
    const Point2 u = c - a;
    const double lu = norm(u);
    return lu > eps && std::abs(cross(u / lu, b - a)) <= eps && dot(b - a, u) > 0.0 && dot(c - b, u) > 0.0;
  };
  std::vector<Point2> out;
  for (const Point2& q : ring) {
    while (out.size() >= 2 && redundant(out[out.size() - 2], out.back(), q)) out.pop_back();
    out.push_back(q);
  }
  // the seam between the last and first vertices
  std::size_t front = 0;
  bool changed = true;
  while (changed && out.size() - front > 3) {
    changed = false;
    const std::size_t m = out.size();
    if (redundant(out[m - 2], out[m - 1], out[front])) {
      out.pop_back();
      changed = true;
    } else if (redundant(out[m - 1], out[front], out[front + 1])) {
      ++front;
      changed = true;
    }
  }
  return {out.begin() + static_cast<std::ptrdiff_t>(front), out.end()};
}

// Traces closed boundary loops keeping the region on the left.
inline std::vector<std::vector<Point2>> trace_loops(const std::vector<DirectedSegment>& segs, double eps) {
  std::vector<Point2> pts;
  for (const auto& s : segs) {
    pts.push_back(s.a);
    pts.push_back(s.b);
  }
  std::vector<Point2> nodes;
  const auto id = snap_points(pts, eps, nodes);

  std::map<std::pair<std::size_t, std::size_t>, int> count;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::size_t a = id[2 * i], b = id[2 * i + 1];
    if (a == b) continue;
    auto rev = count.find({b, a});
    if (rev != count.end() && rev->second > 0) {
      --rev->second;  // zero-width sliver
      continue;
    }
    count[{a, b}] = 1;
  }
  struct Edge {
    std::size_t from, to;
    bool used = false;
  };
  std::vector<Edge> edges;
  for (const auto& [key, c] : count)
    if (c > 0) edges.push_back({key.first, key.second});
  std::vector<std::vector<std::size_t>> out(nodes.size());
  for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].from].push_back(e);

  auto next_edge = [&](std::size_t e) {
    const std::size_t at = edges[e].to;
    const Point2 ref = nodes[edges[e].from] - nodes[at];
    std::size_t best = static_cast<std::size_t>(-1);
    double best_angle = 10.0;
    for (std::size_t g : out[at]) {
      double a = ccw_angle(nodes[edges[g].to] - nodes[at], ref);
      if (a <= 0.0) a = 2.0 * std::numbers::pi;
      if (a < best_angle) {
        best_angle = a;
        best = g;
      }
    }
    return best;
  };

  std::vector<std::vector<Point2>> rings;
  for (std::size_t s = 0; s < edges.size(); ++s) {
    if (edges[s].used) continue;
    std::vector<Point2> ring;
    std::size_t e = s;
    bool closed = false;
    for (std::size_t guard = 0; guard <= edges.size(); ++guard) {
      edges[e].used = true;
      ring.push_back(nodes[edges[e].from]);
      const std::size_t nx = next_edge(e);
      if (nx == static_cast<std::size_t>(-1)) break;
      if (nx == s) {
        closed = true;
        break;
      }
      if (edges[nx].used) break;
      e = nx;
    }
    if (closed && ring.size() >= 3) rings.push_back(std::move(ring));
  }
  return rings;
}

}  // namespace detail

// Union of free ∩ cell over all regions, as CCW rings with collinear points removed.
inline std::vector<std::vector<Point2>> assemble_regions(const SimplePolygon& poly, const ShortestPathMap& spm,
                                                         const std::vector<FreeRegion>& frees) {
  const double eps = poly.eps();
  std::vector<detail::DirectedSegment> segs;
  for (std::size_t i = 0; i < spm.regions.size(); ++i) detail::collect_piece(spm.regions[i], frees[i], eps, segs);
  segs = detail::cancel_windows(poly, spm.windows, std::move(segs), eps);
  std::vector<std::vector<Point2>> out;
  for (auto& ring : detail::trace_loops(segs, eps)) {
    if (signed_area(ring) <= eps * eps) continue;
    out.push_back(detail::drop_collinear(ring, eps));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return signed_area(a) > signed_area(b); });
  return out;
}

}  // namespace beacon
