#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "beacon/attraction.hpp"
#include "beacon/audit.hpp"
#include "fixtures.hpp"

using namespace beacon;
using namespace beacon::fixtures;

namespace {

void expect_point(Point2 a, Point2 b, double tol = 1e-12) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
}

}  // namespace

TEST(Simulate, ConvexSinglePull) {
  const Trajectory t = simulate(square4(), {1, 1}, {3, 3});
  ASSERT_EQ(t.edges.size(), 1u);
  EXPECT_EQ(t.edges[0].kind, MoveKind::Pull);
  EXPECT_EQ(t.outcome, Outcome::ReachedBeacon);
}

TEST(Simulate, LPolygonAroundCorner) {
  const Trajectory t = simulate(l_polygon(), {0.5, 1}, {3, 3});
  ASSERT_EQ(t.edges.size(), 3u);
  EXPECT_EQ(t.edges[0].kind, MoveKind::Pull);
  expect_point(t.edges[0].to, {1.75, 2});
  EXPECT_EQ(t.edges[1].kind, MoveKind::Slide);
  expect_point(t.edges[1].to, {2, 2});
  EXPECT_EQ(t.edges[2].kind, MoveKind::Pull);
  expect_point(t.edges[2].to, {3, 3});
  EXPECT_EQ(t.outcome, Outcome::ReachedBeacon);
}

TEST(Simulate, SpikeDeadPoint) {
  const Trajectory t = simulate(spike6(), {0.5, 0.5}, {0.5, 5});
  ASSERT_EQ(t.edges.size(), 2u);
  expect_point(t.edges[0].to, {0.5, 13.0 / 6.0});
  EXPECT_EQ(t.edges[1].kind, MoveKind::Slide);
  // nearest point of the line y = 2 + x/3 to the beacon
  expect_point(t.edges[1].to, {1.35, 2.45});
  EXPECT_EQ(t.outcome, Outcome::DeadPoint);
  expect_point(t.end, {1.35, 2.45});
  EXPECT_TRUE(certify_dead_point(spike6(), t.end, t.beacon, 1e-9));
}

TEST(Attracts, SpikeExamples) {
  const SimplePolygon p = spike6();
  EXPECT_FALSE(attracts(p, {0.5, 5}, {0.5, 0.5}));
  const Trajectory t = simulate(p, {0.5, 0.5}, {2.5, 5.5});
  EXPECT_EQ(t.outcome, Outcome::ReachedBeacon);
  ASSERT_EQ(t.edges.size(), 3u);
  // pull line x = 0.5 + 2s, y = 0.5 + 5s meets y = 2 + x/3 at s = 5/13
  expect_point(t.edges[0].to, {0.5 + 10.0 / 13.0, 0.5 + 25.0 / 13.0});
  expect_point(t.edges[1].to, {3, 3});
}

TEST(Attracts, NotSymmetric) {
  const SimplePolygon p = spike6();
  EXPECT_TRUE(attracts(p, {2.5, 5.5}, {0.5, 0.5}));
  EXPECT_FALSE(attracts(p, {0.5, 0.5}, {2.5, 5.5}));
}

TEST(Attracts, ConvexAlwaysTrue) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point2> pts;
    const int n = 3 + trial % 20;
    for (int i = 0; i < n; ++i) {
      const double a = 2.0 * std::numbers::pi * i / n;
      pts.push_back({std::cos(a), std::sin(a)});
    }
    const SimplePolygon c = SimplePolygon::validate(pts);
    for (int k = 0; k < 20; ++k) EXPECT_TRUE(attracts(c, random_interior(c, rng), random_interior(c, rng)));
  }
}

TEST(SplitEdge, Examples) {
  const SimplePolygon p = spike6();
  const auto s = split_edge(p, kSpikeTip, {0.2, 4.6});
  ASSERT_TRUE(s.has_value());
  expect_point(s->end.point, {8, 1.0 / 7.0});
  EXPECT_FALSE(split_edge(p, kSpikeTip, {6, 1}).has_value());
  EXPECT_FALSE(split_edge(l_polygon(), kLReflex, {3, 3}).has_value());
  EXPECT_THROW(split_edge(p, 0, {1, 1}), Error);
}

TEST(SampleInverseAttraction, Examples) {
  for (const LabeledSample& s : sample_inverse_attraction(square4(), {2, 2}, {0.5, 0.0})) EXPECT_TRUE(s.attracted);
  EXPECT_TRUE(sample_inverse_attraction(square4(), {2, 2}, {10.0, 0.0}).empty());
  const auto samples = sample_inverse_attraction(spike6(), {0.5, 0.5}, {0.25, 0.0});
  int found = 0;
  for (const LabeledSample& s : samples) {
    if (near(s.point, {0.5, 5}, 1e-12)) {
      EXPECT_FALSE(s.attracted);
      ++found;
    }
    if (near(s.point, {2.5, 5.5}, 1e-12)) {
      EXPECT_TRUE(s.attracted);
      ++found;
    }
  }
  EXPECT_EQ(found, 2);
}

TEST(Audit, RandomTrajectoriesHoldInvariants) {
  std::mt19937 rng(13);
  AuditReport total;
  std::size_t dead = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const SimplePolygon p = random_star(rng, 6 + trial % 25);
    const Triangulation tri = triangulate(p);
    for (int k = 0; k < 40; ++k) {
      const Trajectory t = simulate(p, random_interior(p, rng), random_interior(p, rng));
      dead += t.outcome == Outcome::DeadPoint;
      total += audit_trajectory(p, tri, t);
    }
  }
  EXPECT_EQ(total.total(), 0u) << total.distance_violations << " " << total.angle_violations << " "
                               << total.geodesic_violations << " " << total.deadpoint_violations;
  EXPECT_GT(dead, 0u);
}
