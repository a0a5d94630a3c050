#include <gtest/gtest.h>

#include <numbers>
#include <queue>
#include <random>

#include "beacon/shortest_paths.hpp"
#include "fixtures.hpp"

using namespace beacon;
using namespace beacon::fixtures;

namespace {

// Dijkstra over the visibility graph of the vertices plus the two endpoints.
std::vector<double> visibility_distances(const SimplePolygon& p, Point2 s, const std::vector<Point2>& targets) {
  std::vector<Point2> nodes = p.vertices();
  nodes.push_back(s);
  const std::size_t src = nodes.size() - 1;
  for (Point2 t : targets) nodes.push_back(t);
  const std::size_t m = nodes.size();
  std::vector<double> d(m, std::numeric_limits<double>::infinity());
  std::vector<char> done(m, 0);
  d[src] = 0;
  for (std::size_t it = 0; it < m; ++it) {
    std::size_t u = m;
    for (std::size_t i = 0; i < m; ++i)
      if (!done[i] && (u == m || d[i] < d[u])) u = i;
    if (u == m || std::isinf(d[u])) break;
    done[u] = 1;
    for (std::size_t v = 0; v < m; ++v)
      if (!done[v] && sees(p, nodes[u], nodes[v])) d[v] = std::min(d[v], d[u] + dist(nodes[u], nodes[v]));
  }
  return d;
}

}  // namespace

TEST(Geodesic, SpikeBendsAtTip) {
  const GeodesicPath g = geodesic(spike6(), {6, 1}, {0.3, 4.5});
  ASSERT_EQ(g.vertices.size(), 1u);
  EXPECT_EQ(g.vertices[0], kSpikeTip);
  EXPECT_NEAR(g.length, dist({6, 1}, {3, 3}) + dist({3, 3}, {0.3, 4.5}), 1e-12);
}

TEST(Geodesic, LPolygonCorner) {
  const GeodesicPath g = geodesic(l_polygon(), {0.5, 1}, {3, 3});
  ASSERT_EQ(g.points.size(), 3u);
  EXPECT_NEAR(g.points[1].x, 2.0, 1e-12);
  EXPECT_NEAR(g.points[1].y, 2.0, 1e-12);
  EXPECT_NEAR(g.length, dist({0.5, 1}, {2, 2}) + dist({2, 2}, {3, 3}), 1e-12);
}

TEST(Geodesic, VisiblePairIsStraight) {
  const GeodesicPath g = geodesic(spike6(), {6, 1}, {0.5, 5});
  EXPECT_TRUE(g.vertices.empty());
  EXPECT_NEAR(g.length, dist({6, 1}, {0.5, 5}), 1e-12);
}

TEST(ShortestPathTree, MatchesVisibilityGraph) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const SimplePolygon p = random_star(rng, 5 + trial % 25);
    const Triangulation tri = triangulate(p);
    const Point2 s = random_interior(p, rng);
    std::vector<Point2> qs;
    for (int k = 0; k < 8; ++k) qs.push_back(random_interior(p, rng));
    const ShortestPathTree spt = shortest_path_tree(p, tri, s, qs);
    const auto oracle = visibility_distances(p, s, qs);
    for (std::size_t v = 0; v < p.size(); ++v) EXPECT_NEAR(spt.distance[v], oracle[v], 1e-9) << trial;
    for (std::size_t q = 0; q < qs.size(); ++q)
      EXPECT_NEAR(spt.query_distance[q], oracle[p.size() + 1 + q], 1e-9) << trial;
    // parents see their children and interior bends are reflex
    for (std::size_t v = 0; v < p.size(); ++v) {
      const std::size_t u = spt.parent[v];
      const Point2 up = u == kSource ? s : p.vertex(u);
      EXPECT_TRUE(sees(p, up, p.vertex(v)));
      if (u != kSource) {
        EXPECT_TRUE(p.is_reflex(u));
      }
    }
  }
}

TEST(ShortestPathTree, SourceOnVertexAndEdge) {
  const SimplePolygon p = spike6();
  const Triangulation tri = triangulate(p);
  for (Point2 s : {Point2{0, 0}, Point2{3, 3}, Point2{4, 0}, Point2{8, 3}}) {
    const ShortestPathTree spt = shortest_path_tree(p, tri, s);
    const auto oracle = visibility_distances(p, s, {});
    for (std::size_t v = 0; v < p.size(); ++v) EXPECT_NEAR(spt.distance[v], oracle[v], 1e-9);
  }
}

TEST(PrunedSpt, OnlyReflexVertices) {
  const PrunedSpt t = pruned_spt(spike6(), {6, 1});
  ASSERT_EQ(t.nodes.size(), 1u);
  EXPECT_EQ(t.nodes[0], kSpikeTip);
  EXPECT_EQ(t.parent[kSpikeTip], kSource);
  EXPECT_NEAR(t.distance[kSpikeTip], std::sqrt(13.0), 1e-12);
}

TEST(ShortestPathMap, SpikeWindows) {
  const SimplePolygon p = spike6();
  {
    const ShortestPathMap m = shortest_path_map(p, {6, 1});
    ASSERT_EQ(m.windows.size(), 1u);
    EXPECT_NEAR(m.windows[0].end.point.x, 0.0, 1e-12);
    EXPECT_NEAR(m.windows[0].end.point.y, 5.0, 1e-12);
    ASSERT_EQ(m.regions.size(), 2u);
    EXPECT_EQ(m.regions[1].base, kSpikeTip);
    EXPECT_NEAR(signed_area(m.regions[1].cell), 1.5, 1e-12);  // (3,3),(0,5),(0,4)
  }
  {
    const ShortestPathMap m = shortest_path_map(p, {0.5, 0.5});
    ASSERT_EQ(m.windows.size(), 1u);
    EXPECT_NEAR(m.windows[0].end.point.x, 6.0, 1e-12);
    EXPECT_NEAR(m.windows[0].end.point.y, 6.0, 1e-12);
    ASSERT_EQ(m.regions.size(), 2u);
    EXPECT_EQ(m.regions[0].base, kSource);
    EXPECT_EQ(m.regions[1].base, kSpikeTip);
    // (3,3),(6,6),(0,6),(0,4)
    EXPECT_NEAR(signed_area(m.regions[1].cell), 12.0, 1e-12);
  }
}

TEST(ShortestPathMap, CellsTileAndAgreeWithGeodesics) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const SimplePolygon p = random_star(rng, 6 + trial % 20);
    const Triangulation tri = triangulate(p);
    const Point2 s = random_interior(p, rng);
    const ShortestPathMap m = shortest_path_map(p, tri, s);
    double total = 0.0;
    for (const SpmRegion& r : m.regions) {
      const double a = signed_area(r.cell);
      EXPECT_GT(a, 0.0);
      total += a;
    }
    EXPECT_NEAR(total, p.area(), 1e-9 * p.area());
    // a point strictly inside the cell of v has its last bend at v
    for (int k = 0; k < 30; ++k) {
      const Point2 q = random_interior(p, rng);
      std::size_t cell = kNoVertex;
      for (std::size_t i = 0; i < m.regions.size(); ++i)
        if (contains(m.regions[i].cell, q, 1e-9) == Containment::Interior) cell = i;
      if (cell == kNoVertex) continue;
      const ShortestPathTree spt = shortest_path_tree(p, tri, s, {q});
      std::size_t last = spt.query_parent[0];
      while (last != kSource && !p.is_reflex(last)) last = spt.parent[last];
      EXPECT_EQ(last, m.regions[cell].base) << trial;
    }
  }
}
