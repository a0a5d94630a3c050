#include <gtest/gtest.h>

#include <numeric>
#include <numbers>
#include <random>

#include "beacon/triangulation.hpp"
#include "fixtures.hpp"

using namespace beacon;
using namespace beacon::fixtures;

namespace {

// Comb with teeth hanging downward: many split/merge vertices for the sweep.
SimplePolygon comb(int teeth) {
  std::vector<Point2> pts{{0, 0}};
  for (int i = 0; i < teeth; ++i) {
    const double x = 2.0 * i;
    pts.push_back({x + 1, 0});
    pts.push_back({x + 1, 3});
    pts.push_back({x + 2, 3});
    pts.push_back({x + 2, 0});
  }
  pts.push_back({2.0 * teeth + 1, 0});
  pts.push_back({2.0 * teeth + 1, 5});
  pts.push_back({0, 5});
  return SimplePolygon::validate(pts);
}

void check(const SimplePolygon& p, TriangulationMethod method) {
  const Triangulation t = triangulate(p, method);
  ASSERT_EQ(t.size(), p.size() - 2);
  double area = 0.0;
  for (const auto& tri : t.triangles) {
    const std::vector<Point2> pts{p.vertex(tri[0]), p.vertex(tri[1]), p.vertex(tri[2])};
    const double a = signed_area(pts);
    EXPECT_GT(a, 0.0);
    area += a;
  }
  EXPECT_NEAR(area, p.area(), 1e-9 * p.area());
  // dual graph: n-3 interior adjacencies, connected
  std::size_t links = 0;
  for (const auto& nb : t.neighbors)
    for (std::size_t x : nb) links += x != Triangulation::kNone;
  EXPECT_EQ(links, 2 * (p.size() - 3));
  std::vector<char> seen(t.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t y : t.neighbors[x])
      if (y != Triangulation::kNone && !seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
  }
  EXPECT_EQ(count, t.size());
}

}  // namespace

TEST(Triangulate, Examples) {
  EXPECT_EQ(triangulate(square4()).size(), 2u);
  EXPECT_EQ(triangulate(spike6()).size(), 5u);
  check(spike6(), TriangulationMethod::MonotoneSweep);
  check(spike6(), TriangulationMethod::EarClipping);
  check(l_polygon(), TriangulationMethod::MonotoneSweep);
  std::vector<Point2> convex;
  for (int i = 0; i < 17; ++i) convex.push_back({std::cos(i * 0.37), std::sin(i * 0.37)});
  check(SimplePolygon::validate(convex), TriangulationMethod::MonotoneSweep);
}

TEST(Triangulate, CombAndRandom) {
  check(comb(20), TriangulationMethod::MonotoneSweep);
  check(comb(20), TriangulationMethod::EarClipping);
  std::mt19937 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const SimplePolygon p = random_star(rng, 4 + trial % 40);
    check(p, TriangulationMethod::MonotoneSweep);
    check(p, TriangulationMethod::EarClipping);
  }
}

TEST(RayShooter, AgreesWithBruteForce) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 100; ++trial) {
    const SimplePolygon p = random_star(rng, 6 + trial % 30);
    const Triangulation t = triangulate(p);
    const RayShooter shooter(p, t);
    for (std::size_t v = 0; v < p.size(); ++v) {
      for (int k = 0; k < 5; ++k) {
        const Point2 d{std::cos(ang(rng)), std::sin(ang(rng))};
        if (!p.points_inside_at_vertex(v, d, true)) continue;
        const BoundaryPoint a = ray_shoot(p, p.vertex(v), d);
        const BoundaryPoint b = shooter.from_vertex(v, d);
        EXPECT_NEAR(a.point.x, b.point.x, 1e-9);
        EXPECT_NEAR(a.point.y, b.point.y, 1e-9);
      }
    }
    const auto& t0 = t.triangles[0];
    const Point2 o = (p.vertex(t0[0]) + p.vertex(t0[1]) + p.vertex(t0[2])) / 3.0;
    const BoundaryPoint c = shooter.from_point(o, {1, 0.3});
    const BoundaryPoint d = ray_shoot(p, o, {1, 0.3});
    EXPECT_NEAR(c.point.x, d.point.x, 1e-9);
    EXPECT_NEAR(c.point.y, d.point.y, 1e-9);
  }
}

TEST(RayShooter, SpikeExamples) {
  const SimplePolygon p = spike6();
  const Triangulation t = triangulate(p);
  const RayShooter shooter(p, t);
  const BoundaryPoint a = shooter.from_vertex(kSpikeTip, {3, 1});
  EXPECT_NEAR(a.point.y, 14.0 / 3.0, 1e-12);
  const BoundaryPoint b = shooter.from_vertex(kSpikeTip, {1, 1});
  EXPECT_NEAR(b.point.x, 6.0, 1e-12);
}
