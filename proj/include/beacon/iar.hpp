#pragma once

// Inverse attraction region: the set of beacon positions that attract a fixed
// point p. Each shortest-path-map cell contributes cell ∩ Free, where Free is
// the intersection of the complements of the constraints whose domain holds it.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "beacon/assembly.hpp"
#include "beacon/constraints.hpp"

namespace beacon {

enum class VertexProvenance { OnPolygonBoundary, Internal };

struct IarComponent {
  SimplePolygon polygon;
  std::vector<VertexProvenance> provenance;
};

struct IarStats {
  std::size_t group1 = 0;  // vertices strictly inside a polygon edge
  std::size_t group2 = 0;  // vertices in the interior of P
  std::size_t total_vertices = 0;
  std::size_t per_edge_max = 0;
  std::vector<std::size_t> per_edge;  // group1 tally per polygon edge
};

struct IarResult {
  std::vector<IarComponent> components;
  IarStats stats;
  Point2 point;            // the query point as given
  Point2 effective_point;  // the point actually used
  bool perturbed = false;

  double area() const {
    double a = 0.0;
    for (const auto& c : components) a += c.polygon.area();
    return a;
  }
  bool contains(Point2 q, double eps) const {
    for (const auto& c : components)
      if (beacon::contains(c.polygon.vertices(), q, eps) != Containment::Exterior) return true;
    return false;
  }
  double distance_to_boundary(Point2 q) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : components)
      for (std::size_t i = 0; i < c.polygon.size(); ++i) {
        const Segment e = c.polygon.edge(i);
        const Point2 d = e.b - e.a;
        const double t = std::clamp(dot(q - e.a, d) / dot(d, d), 0.0, 1.0);
        best = std::min(best, dist(q, e.a + t * d));
      }
    return best;
  }
};

enum class IarMethod { Naive, Optimal };

// Seconds spent per pipeline stage; perturbation retries add to the first three.
struct IarTimings {
  double triangulation = 0.0;
  double spm = 0.0;  // tree and map
  double constraints = 0.0;
  double free_regions = 0.0;
  double assembly = 0.0;

  double total() const { return triangulation + spm + constraints + free_regions + assembly; }
};

class Stopwatch {
 public:
  // seconds since construction or the previous lap
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

inline IarStats complexity_stats(const SimplePolygon& poly, const std::vector<IarComponent>& components,
                                 const BoundaryLocator& locator) {
  IarStats s;
  s.per_edge.assign(poly.size(), 0);
  for (const auto& c : components) {
    for (const Point2& q : c.polygon.vertices()) {
      ++s.total_vertices;
      const auto bp = locator.locate(q);
      if (!bp) {
        ++s.group2;
      } else if (!bp->is_vertex()) {
        ++s.group1;
        s.per_edge_max = std::max(s.per_edge_max, ++s.per_edge[bp->edge]);
      }
    }
  }
  return s;
}

inline IarStats complexity_stats(const SimplePolygon& poly, const std::vector<IarComponent>& components) {
  return complexity_stats(poly, components, BoundaryLocator(poly));
}

namespace detail {

// Position of the cell's base vertex in its ring.
inline std::size_t base_index_in_cell(const SimplePolygon& poly, const SpmRegion& r) {
  const Point2 v = poly.vertex(r.base);
  std::size_t best = 0;
  for (std::size_t k = 1; k < r.cell.size(); ++k)
    if (dist(r.cell[k], v) < dist(r.cell[best], v)) best = k;
  return best;
}

// Direction from the base vertex into the cell, halving the cell's angle there.
inline Point2 cell_direction(const SimplePolygon& poly, const SpmRegion& r) {
  const std::size_t m = r.cell.size(), k = base_index_in_cell(poly, r);
  const Point2 v = r.cell[k];
  const Point2 a = r.cell[(k + 1) % m] - v, b = r.cell[(k + m - 1) % m] - v;
  const double half = 0.5 * ccw_angle(a, b);
  const Point2 u = normalized(a);
  return {u.x * std::cos(half) - u.y * std::sin(half), u.x * std::sin(half) + u.y * std::cos(half)};
}

inline bool domain_holds_cell(const SimplePolygon& poly, const ConstrainingHalfPlane& c, const SpmRegion& r,
                              Point2 cell_dir) {
  if (c.domain.contains_vertex(r.base)) return true;
  const auto sector = piece_sector_at(poly, c.domain, r.base);
  return sector && in_sector(sector->first, sector->second, cell_dir);
}

// Sutherland-Hodgman step against one closed half-plane.
inline std::vector<Point2> clip_convex(const std::vector<Point2>& poly, const HalfPlane& h) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % n];
    const double da = h.signed_distance(a), db = h.signed_distance(b);
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) out.push_back(lerp(a, b, da / (da - db)));
  }
  if (out.size() < 3 || std::abs(signed_area(out)) == 0.0) return {};
  return out;
}

inline std::vector<FreeRegion> frees_naive(const SimplePolygon& poly, const ShortestPathMap& spm,
                                           const std::vector<ConstrainingHalfPlane>& cs) {
  const BBox box = poly.bbox().inflated(0.01 * poly.diameter());
  std::vector<FreeRegion> frees(spm.regions.size());
  for (std::size_t i = 1; i < spm.regions.size(); ++i) {
    const SpmRegion& r = spm.regions[i];
    const Point2 dir = cell_direction(poly, r);
    std::vector<HalfPlane> planes;
    for (const auto& c : cs)
      if (domain_holds_cell(poly, c, r, dir)) planes.push_back(c.plane.complement());
    frees[i] = halfplane_intersection(planes, box);
  }
  return frees;
}

// Offline replacement for a dynamic hull: each constraint's domain is a boundary
// arc, which covers a contiguous run of cells ordered by base vertex. Runs are
// stored on segment tree nodes and Free is refined down the tree.
class FreeTree {
 public:
  FreeTree(const SimplePolygon& poly, const ShortestPathMap& spm, const std::vector<ConstrainingHalfPlane>& cs)
      : poly_(poly), spm_(spm) {
    for (std::size_t i = 1; i < spm.regions.size(); ++i) order_.push_back(i);
    std::sort(order_.begin(), order_.end(),
              [&](std::size_t a, std::size_t b) { return spm.regions[a].base < spm.regions[b].base; });
    const std::size_t m = order_.size();
    if (m == 0) return;
    size_ = 1;
    while (size_ < m) size_ *= 2;
    node_planes_.assign(2 * size_, {});
    leaf_extra_.assign(m, {});
    boxes_.assign(2 * size_, std::nullopt);
    std::vector<std::size_t> bases(m);
    std::vector<Point2> dirs(m);
    for (std::size_t k = 0; k < m; ++k) {
      const SpmRegion& r = spm.regions[order_[k]];
      bases[k] = r.base;
      dirs[k] = cell_direction(poly, r);
      boxes_[size_ + k] = BBox::of(r.cell);
    }
    for (std::size_t x = size_ - 1; x >= 1; --x) {
      const auto& l = boxes_[2 * x];
      const auto& rr = boxes_[2 * x + 1];
      if (l && rr) {
        BBox b = *l;
        b.merge(*rr);
        boxes_[x] = b;
      } else {
        boxes_[x] = l ? l : rr;
      }
    }
    auto leaf_of = [&](std::size_t vertex) {
      return static_cast<std::size_t>(std::lower_bound(bases.begin(), bases.end(), vertex) - bases.begin());
    };
    const std::size_t n = poly.size();
    for (const auto& c : cs) {
      const HalfPlane comp = c.plane.complement();
      // open arc (from, to) in vertex indices: first vertex after from, last vertex before to
      const std::size_t first = (c.domain.from.edge + 1) % n;
      const std::size_t last = c.domain.to.is_vertex() ? (c.domain.to.edge + n - 1) % n : c.domain.to.edge;
      const bool nonempty = c.domain.contains_vertex(first);
      if (nonempty) {
        if (first <= last) {
          add_range(leaf_of(first), leaf_of(last + 1), comp);
        } else {
          add_range(leaf_of(first), m, comp);
          add_range(0, leaf_of(last + 1), comp);
        }
      }
      for (const BoundaryPoint* end : {&c.domain.from, &c.domain.to}) {
        if (!end->is_vertex()) continue;
        const std::size_t k = leaf_of(end->edge);
        if (k < m && bases[k] == end->edge && domain_holds_cell(poly, c, spm.regions[order_[k]], dirs[k]) &&
            !c.domain.contains_vertex(end->edge))
          leaf_extra_[k].push_back(comp);
      }
    }
  }

  std::vector<FreeRegion> frees() const {
    std::vector<FreeRegion> out(spm_.regions.size());
    if (order_.empty()) return out;
    const BBox box = poly_.bbox().inflated(0.01 * poly_.diameter());
    for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::vector<Point2>{};
    walk(1, box.corners(), out);
    return out;
  }

 private:
  void add_range(std::size_t lo, std::size_t hi, const HalfPlane& h) { add_range(1, 0, size_, lo, hi, h); }
  void add_range(std::size_t x, std::size_t nlo, std::size_t nhi, std::size_t lo, std::size_t hi, const HalfPlane& h) {
    if (hi <= nlo || nhi <= lo) return;
    if (lo <= nlo && nhi <= hi) {
      node_planes_[x].push_back(h);
      return;
    }
    const std::size_t mid = (nlo + nhi) / 2;
    add_range(2 * x, nlo, mid, lo, hi, h);
    add_range(2 * x + 1, mid, nhi, lo, hi, h);
  }

  void walk(std::size_t x, std::vector<Point2> free, std::vector<FreeRegion>& out) const {
    if (!boxes_[x]) return;
    const double pad = 1e-6 * poly_.diameter();
    for (const HalfPlane& h : boxes_[x]->inflated(pad).planes()) {
      free = clip_convex(free, h);
      if (free.empty()) return;
    }
    if (!refine(free, node_planes_[x], *boxes_[x])) return;
    if (x >= size_) {
      const std::size_t k = x - size_;
      if (!refine(free, leaf_extra_[k], *boxes_[x])) return;
      out[order_[k]] = std::move(free);
      return;
    }
    walk(2 * x, free, out);
    walk(2 * x + 1, std::move(free), out);
  }

  // Cuts free by planes: clipping one at a time is quadratic when a node
  // carries many planes, so larger batches go through one intersection.
  bool refine(std::vector<Point2>& free, const std::vector<HalfPlane>& planes, const BBox& box) const {
    if (planes.size() <= 8) {
      for (const HalfPlane& h : planes) {
        free = clip_convex(free, h);
        if (free.empty()) return false;
      }
      return true;
    }
    std::vector<HalfPlane> all(planes);
    for (std::size_t i = 0; i < free.size(); ++i)
      all.push_back(HalfPlane::left_of(free[i], free[(i + 1) % free.size()]));
    free = halfplane_intersection(all, box.inflated(1e-3 * poly_.diameter()));
    return !free.empty();
  }

  const SimplePolygon& poly_;
  const ShortestPathMap& spm_;
  std::vector<std::size_t> order_;  // region indices by base vertex
  std::size_t size_ = 0;
  std::vector<std::vector<HalfPlane>> node_planes_;
  std::vector<std::vector<HalfPlane>> leaf_extra_;
  std::vector<std::optional<BBox>> boxes_;
};

// True when two constraints from different tree edges share a supporting line
// and one of them passes through p, so that moving p can separate them. Collisions
// between lines fixed by the polygon alone are left in place; the union
// assembly does not depend on them.
inline bool has_collinear_constraints(const std::vector<ConstrainingHalfPlane>& cs, double eps) {
  struct Key {
    double angle, offset;
    std::size_t vertex;
    bool from_root;
  };
  std::vector<Key> keys;
  for (const auto& c : cs) {
    // canonical orientation of the line, so opposite planes compare equal
    double a = c.plane.a, b = c.plane.b, off = c.plane.c;
    if (a < 0.0 || (a == 0.0 && b < 0.0)) {
      a = -a;
      b = -b;
      off = -off;
    }
    keys.push_back({std::atan2(b, a), off, c.vertex, c.parent == kSource && c.tag != CaseTag::Case2});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) { return x.angle < y.angle; });
  const double angle_tol = 1e-9;
  auto clash = [&](const Key& x, const Key& y, bool flipped) {
    const double off = flipped ? -y.offset : y.offset;
    return x.vertex != y.vertex && (x.from_root || y.from_root) && std::abs(x.offset - off) <= eps;
  };
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size() && keys[j].angle - keys[i].angle <= angle_tol; ++j)
      if (clash(keys[i], keys[j], false)) return true;
  // angles near +pi/2 and -pi/2 describe nearly the same direction
  for (std::size_t i = 0; i < keys.size() && keys[i].angle < -std::numbers::pi / 2 + angle_tol; ++i)
    for (std::size_t j = keys.size(); j-- > 0 && keys[j].angle > std::numbers::pi / 2 - angle_tol;)
      if (clash(keys[i], keys[j], true)) return true;
  return false;
}

struct ConstraintSet {
  Triangulation tri;
  ShortestPathMap spm;
  std::vector<ConstrainingHalfPlane> constraints;
};

inline std::optional<ConstraintSet> constraints_in_general_position(const SimplePolygon& poly, Point2 p,
                                                                   IarTimings* t = nullptr) {
  Stopwatch clock;
  ConstraintSet s{triangulate(poly), {}, {}};
  if (t) t->triangulation += clock.lap();
  try {
    s.spm = shortest_path_map(poly, s.tri, p);
    if (t) t->spm += clock.lap();
    s.constraints = all_constraints(poly, RayShooter(poly, s.tri), s.spm.tree);
    if (t) t->constraints += clock.lap();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateOnBoundary) return std::nullopt;
    throw;
  }
  if (has_collinear_constraints(s.constraints, poly.eps())) return std::nullopt;
  return s;
}

}  // namespace detail

// A point in degenerate position is nudged by about 1e-7 of the diameter.
inline IarResult inverse_attraction_region(const SimplePolygon& poly, Point2 p, IarMethod method,
                                           IarTimings* timings = nullptr) {
  if (contains(poly, p) == Containment::Exterior) throw Error(ErrorCode::PointOutsidePolygon, "p outside polygon");
  IarResult res;
  res.point = p;
  res.effective_point = p;
  // a beacon on the boundary is pushed inside like any other degenerate point
  auto set = contains(poly, p) == Containment::Interior
                 ? detail::constraints_in_general_position(poly, p, timings)
                 : std::nullopt;
  const double step = 1e-7 * poly.diameter();
  for (int k = 0; !set && k < 64; ++k) {
    // fixed directions, golden-angle spaced, with growing length
    const double a = 2.399963229728653 * k;
    const Point2 q = p + step * (1.0 + k / 16) * Point2{std::cos(a), std::sin(a)};
    if (contains(poly, q) != Containment::Interior) continue;
    set = detail::constraints_in_general_position(poly, q, timings);
    if (set) {
      res.effective_point = q;
      res.perturbed = true;
    }
  }
  if (!set) throw Error(ErrorCode::DegenerateOnBoundary, "no general-position perturbation found");

  Stopwatch clock;
  const auto frees = method == IarMethod::Naive ? detail::frees_naive(poly, set->spm, set->constraints)
                                                : detail::FreeTree(poly, set->spm, set->constraints).frees();
  if (timings) timings->free_regions += clock.lap();
  const BoundaryLocator locator(poly);
  for (auto& ring : assemble_regions(poly, set->spm, frees)) {
    IarComponent c{SimplePolygon::from_trusted(std::move(ring)), {}};
    for (const Point2& q : c.polygon.vertices())
      c.provenance.push_back(locator.locate(q) ? VertexProvenance::OnPolygonBoundary : VertexProvenance::Internal);
    res.components.push_back(std::move(c));
  }
  res.stats = complexity_stats(poly, res.components, locator);
  if (timings) timings->assembly += clock.lap();
  return res;
}

inline IarResult iar_naive(const SimplePolygon& poly, Point2 p) {
  return inverse_attraction_region(poly, p, IarMethod::Naive);
}

inline IarResult iar_optimal(const SimplePolygon& poly, Point2 p) {
  return inverse_attraction_region(poly, p, IarMethod::Optimal);
}

}  // namespace beacon
