#include <gtest/gtest.h>

#include <set>

#include "beacon/attraction.hpp"
#include "beacon/generators.hpp"
#include "beacon/iar.hpp"
#include "fixtures.hpp"
#include "symdiff.hpp"

using namespace beacon;
using namespace beacon::fixtures;

namespace {

// Same ring up to rotation of the start vertex.
bool same_ring(const std::vector<Point2>& a, const std::vector<Point2>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t s = 0; s < a.size(); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = near(a[(s + i) % a.size()], b[i], tol);
    if (ok) return true;
  }
  return false;
}

double distance_to_segment(Point2 q, const Segment& e) {
  const Point2 d = e.b - e.a;
  const double t = std::clamp(dot(q - e.a, d) / dot(d, d), 0.0, 1.0);
  return dist(q, e.a + t * d);
}

double distance_to_region_boundary(const IarResult& r, Point2 q) { return r.distance_to_boundary(q); }

}  // namespace

TEST(Iar, SquareIsWhole) {
  for (IarMethod m : {IarMethod::Naive, IarMethod::Optimal}) {
    const IarResult r = inverse_attraction_region(square4(), {2, 2}, m);
    ASSERT_EQ(r.components.size(), 1u);
    EXPECT_TRUE(same_ring(r.components[0].polygon.vertices(), square4().vertices(), 1e-9));
    EXPECT_EQ(r.stats.group2, 0u);
  }
}

TEST(Iar, SpikeGolden) {
  const std::vector<Point2> expected{{0, 0}, {8, 0}, {8, 6}, {2, 6}, {3, 3}, {0, 2}};
  for (IarMethod m : {IarMethod::Naive, IarMethod::Optimal}) {
    const IarResult r = inverse_attraction_region(spike6(), {0.5, 0.5}, m);
    ASSERT_EQ(r.components.size(), 1u);
    EXPECT_TRUE(same_ring(r.components[0].polygon.vertices(), expected, 1e-9));
    EXPECT_FALSE(r.perturbed);
    EXPECT_EQ(r.stats.group1, 1u);  // (2,6)
    EXPECT_EQ(r.stats.group2, 0u);
  }
}

TEST(Iar, SpikeCase1Pair) {
  const IarResult r = iar_optimal(spike6(), {6, 1});
  EXPECT_FALSE(r.contains({0.2, 4.6}, 1e-9));
  EXPECT_TRUE(r.contains({0.5, 5}, 1e-9));
}

TEST(Iar, MatchesSimulationAndTheorem) {
  std::mt19937 rng(21);
  std::size_t checked = 0, disagreements = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const SimplePolygon poly = random_star(rng, 8 + trial % 17);
    const Point2 p = random_interior(poly, rng);
    const IarResult naive = iar_naive(poly, p), optimal = iar_optimal(poly, p);
    const Triangulation tri = triangulate(poly);
    const TheoremOracle theorem(poly, all_constraints(poly, RayShooter(poly, tri), pruned_spt(poly, tri, p)));
    const double margin = 1e-6 * poly.diameter();
    for (int k = 0; k < 150; ++k) {
      const Point2 q = random_interior(poly, rng);
      if (distance_to_region_boundary(naive, q) <= margin || distance_to_region_boundary(optimal, q) <= margin)
        continue;
      ++checked;
      const bool sim = attracts(poly, q, p);
      if (sim != naive.contains(q, 0.0) || sim != optimal.contains(q, 0.0) || sim != theorem.attracts(q)) {
        ++disagreements;
        ADD_FAILURE() << "trial " << trial << " q=(" << q.x << "," << q.y << ") sim=" << sim
                      << " naive=" << naive.contains(q, 0.0) << " optimal=" << optimal.contains(q, 0.0)
                      << " theorem=" << theorem.attracts(q);
      }
    }
  }
  EXPECT_EQ(disagreements, 0u);
  EXPECT_GT(checked, 5000u);
}

// Integer histograms with the beacon on lattice points, often on the boundary.
TEST(Iar, LatticeHistogramsMatchSimulation) {
  std::mt19937 rng(5);
  std::size_t checked = 0, bad = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int w = 3 + trial % 8;
    std::uniform_int_distribution<int> height(1, 5);
    std::vector<int> hs;
    for (int i = 0, prev = -1; i < w; ++i) {
      int h = height(rng);
      if (h == prev) h = h % 5 + 1;
      hs.push_back(h);
      prev = h;
    }
    std::vector<Point2> pts{{0, 0}, {double(w), 0}};
    for (int i = w - 1; i >= 0; --i) {
      pts.push_back({double(i + 1), double(hs[i])});
      pts.push_back({double(i), double(hs[i])});
    }
    const SimplePolygon poly = SimplePolygon::validate(pts);
    std::uniform_int_distribution<int> X(0, w), Y(0, 5);
    Point2 p;
    do p = {X(rng) + 0.5 * (trial % 2), double(Y(rng))};
    while (contains(poly, p) == Containment::Exterior);

    const IarResult a = iar_naive(poly, p), b = iar_optimal(poly, p);
    EXPECT_NEAR(a.area(), b.area(), 1e-9 * poly.area());
    std::uniform_real_distribution<double> U(0, 1);
    for (int k = 0; k < 100; ++k) {
      const Point2 q{U(rng) * w, U(rng) * 5};
      if (contains(poly, q) != Containment::Interior || distance_to_region_boundary(a, q) < 1e-4) continue;
      ++checked;
      if (attracts(poly, q, a.effective_point) != a.contains(q, 0)) ++bad;
    }
  }
  EXPECT_GT(checked, 2000u);
  EXPECT_EQ(bad, 0u);
}

TEST(Iar, NaiveAndOptimalAgreeWithinComplexityBounds) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const SimplePolygon poly =
        trial % 2 ? random_star(rng, 6 + trial) : random_polygon(5 + trial, static_cast<std::uint64_t>(trial));
    const Point2 p = random_interior(poly, rng);
    const IarResult a = iar_naive(poly, p), b = iar_optimal(poly, p);
    ASSERT_EQ(a.components.size(), b.components.size()) << trial;
    for (std::size_t i = 0; i < a.components.size(); ++i)
      EXPECT_TRUE(same_ring(a.components[i].polygon.vertices(), b.components[i].polygon.vertices(),
                            1e-9 * poly.diameter()))
          << trial;
    EXPECT_NEAR(a.area(), b.area(), 1e-9 * poly.area());
    EXPECT_LE(b.stats.total_vertices, 6 * poly.size()) << trial;
    EXPECT_LE(b.stats.per_edge_max, 2u) << trial;
  }
}

TEST(Iar, RelativelyConvex) {
  std::mt19937 rng(13);
  std::size_t pairs = 0;
  for (int trial = 0; trial < 20 && pairs < 500; ++trial) {
    const SimplePolygon poly = random_star(rng, 10 + trial);
    const IarResult r = iar_optimal(poly, random_interior(poly, rng));
    const double tol = 1e-9 * poly.diameter();
    for (int k = 0; k < 400 && pairs < 500; ++k) {
      const Point2 a = random_interior(poly, rng), b = random_interior(poly, rng);
      if (!r.contains(a, 0) || !r.contains(b, 0) || !sees(poly, a, b)) continue;
      ++pairs;
      for (int s = 1; s < 20; ++s) EXPECT_TRUE(r.contains(a + (s / 20.0) * (b - a), tol)) << trial;
    }
  }
  EXPECT_EQ(pairs, 500u);
}

// Each boundary edge of the region inside P lies on the effective line of one tree edge.
TEST(Iar, InternalEdgesOnOneEffectiveLine) {
  std::mt19937 rng(17);
  std::size_t internal = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const SimplePolygon poly = random_star(rng, 8 + trial % 20);
    const IarResult r = iar_optimal(poly, random_interior(poly, rng));
    const Triangulation tri = triangulate(poly);
    const auto cs = all_constraints(poly, RayShooter(poly, tri), pruned_spt(poly, tri, r.effective_point));
    const double tol = 1e-7 * poly.diameter();
    for (const auto& c : r.components)
      for (std::size_t i = 0; i < c.polygon.size(); ++i) {
        const Segment e = c.polygon.edge(i);
        if (poly.locate_on_boundary(0.5 * (e.a + e.b))) continue;
        ++internal;
        std::set<std::pair<std::size_t, std::size_t>> owners;
        for (const auto& h : cs)
          if (std::abs(h.plane.signed_distance(e.a)) <= tol && std::abs(h.plane.signed_distance(e.b)) <= tol)
            owners.insert({h.parent, h.vertex});
        EXPECT_EQ(owners.size(), 1u) << trial;
      }
  }
  EXPECT_GT(internal, 50u);
}

// A beacon on a Case-1 line past v that attracts p pulls it through u and v.
TEST(Iar, Case1LineTrajectoryPassesParentAndVertex) {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> U(0, 1);
  std::size_t checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const SimplePolygon poly = random_star(rng, 8 + trial % 20);
    const Point2 p = random_interior(poly, rng);
    const Triangulation tri = triangulate(poly);
    const RayShooter shooter(poly, tri);
    const double eps = 1e-7 * poly.diameter();
    for (const auto& h : all_constraints(poly, shooter, pruned_spt(poly, tri, p))) {
      if (h.tag == CaseTag::Case2) continue;
      const Point2 v = h.v(poly), d = normalized(v - h.u);
      if (!poly.points_inside_at_vertex(h.vertex, d, true)) continue;
      const double reach = dist(v, shooter.from_vertex(h.vertex, d).point);
      const Point2 b = v + (0.05 + 0.9 * U(rng)) * reach * d;
      if (!deadwedge(poly, h.vertex).strictly_contains(b, 0) || !attracts(poly, b, p)) continue;
      const Trajectory t = simulate(poly, p, b);
      auto on_path = [&](Point2 q) {
        for (const auto& e : t.edges)
          if (distance_to_segment(q, {e.from, e.to}) <= eps) return true;
        return false;
      };
      EXPECT_TRUE(on_path(h.u)) << trial;
      EXPECT_TRUE(on_path(v)) << trial;
      ++checked;
    }
  }
  EXPECT_GT(checked, 20u);
}

TEST(SymmetricDifference, KnownAreas) {
  const std::vector<Point2> a{{0, 0}, {2, 0}, {2, 2}, {0, 2}}, b{{1, 0}, {3, 0}, {3, 2}, {1, 2}};
  EXPECT_NEAR(symmetric_difference_area({a}, {b}), 4.0, 1e-12);
  EXPECT_NEAR(symmetric_difference_area({a}, {a}), 0.0, 1e-12);
  const IarResult r = iar_optimal(spike6(), {0.5, 0.5});
  // the constrained quad (3,3),(0,4),(0,6),(2,6)
  EXPECT_NEAR(symmetric_difference_area({spike6().vertices()}, {r.components[0].polygon.vertices()}), 6.0, 1e-9);
}
