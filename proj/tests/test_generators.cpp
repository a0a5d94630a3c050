#include <gtest/gtest.h>

#include <random>

#include "beacon/attraction.hpp"
#include "beacon/generators.hpp"

using namespace beacon;

namespace {

// Pairwise crossings that no other line passes under, sorted by x.
std::vector<Point2> brute_envelope(const std::vector<LineSpec>& ls) {
  std::vector<Point2> out;
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      if (ls[i].slope == ls[j].slope) continue;
      const Point2 x = intersect_lines(ls[i], ls[j]);
      bool lowest = true;
      for (const auto& l : ls) lowest = lowest && l.at(x.x) >= x.y - 1e-9 * (1 + std::abs(x.y));
      if (lowest) out.push_back(x);
    }
  std::sort(out.begin(), out.end(), [](Point2 a, Point2 b) { return a.x < b.x; });
  return out;
}

std::vector<LineSpec> random_lines(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> s(-2, 2), c(-10, 10);
  std::vector<LineSpec> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back({s(rng), c(rng)});
  return out;
}

}  // namespace

TEST(LowerEnvelope, TwoLines) {
  const std::vector<LineSpec> ls{{0.05, 1.0}, {0.08, 0.0}};
  const LowerEnvelope env = lower_envelope(ls);
  ASSERT_EQ(env.breakpoints.size(), 1u);
  EXPECT_NEAR(env.breakpoints[0].x, 100.0 / 3.0, 1e-12);
  EXPECT_NEAR(env.breakpoints[0].y, 8.0 / 3.0, 1e-12);
  // steeper line is lower on the left
  EXPECT_EQ(env.lines, (std::vector<std::size_t>{1, 0}));
}

TEST(LowerEnvelope, SingleLine) {
  const LowerEnvelope env = lower_envelope({{0.3, -2.0}});
  EXPECT_TRUE(env.breakpoints.empty());
  EXPECT_EQ(env.lines, std::vector<std::size_t>{0});
}

TEST(LowerEnvelope, ParallelLinesKeepLower) {
  const LowerEnvelope env = lower_envelope({{0.5, 3.0}, {0.5, -1.0}});
  EXPECT_TRUE(env.breakpoints.empty());
  EXPECT_EQ(env.lines, std::vector<std::size_t>{1});
}

TEST(LowerEnvelope, EmptyThrows) {
  try {
    lower_envelope({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
  }
}

TEST(LowerEnvelope, MatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ls = random_lines(rng, 1 + trial % 40);
    const LowerEnvelope env = lower_envelope(ls);
    const auto want = brute_envelope(ls);
    ASSERT_EQ(env.breakpoints.size(), want.size()) << trial;
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_LT(dist(env.breakpoints[i], want[i]), 1e-9) << trial;
  }
}

TEST(LowerEnvelope, SlopesDecreaseAndBreakpointsAreTight) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ls = random_lines(rng, 2 + trial % 60);
    const LowerEnvelope env = lower_envelope(ls);
    for (std::size_t j = 0; j + 1 < env.lines.size(); ++j)
      EXPECT_GT(ls[env.lines[j]].slope, ls[env.lines[j + 1]].slope);
    for (std::size_t j = 0; j < env.breakpoints.size(); ++j) {
      const Point2 b = env.breakpoints[j];
      if (j > 0) {
        EXPECT_GT(b.x, env.breakpoints[j - 1].x);
      }
      int on = 0;
      for (const auto& l : ls) {
        const double d = l.at(b.x) - b.y;
        EXPECT_GT(d, -1e-9);
        on += std::abs(d) <= 1e-9;
      }
      EXPECT_EQ(on, 2);
    }
  }
}

TEST(Zigzag, LinesHaveDistinctSmallSlopes) {
  const auto ls = zigzag_lines(64, 9);
  ASSERT_EQ(ls.size(), 64u);
  EXPECT_NO_THROW(check_slopes(ls, 0.05));
  EXPECT_EQ(lower_envelope(ls).breakpoints.size(), 63u);
}

TEST(Zigzag, ValidAndMonotone) {
  for (std::size_t k = 1; k <= 256; ++k) {
    const ZigzagInstance z = zigzag_polygon(zigzag_lines(k, 5));
    EXPECT_NO_THROW(SimplePolygon::validate(z.polygon.vertices())) << k;
    EXPECT_TRUE(is_x_monotone(z.polygon)) << k;
    EXPECT_NE(contains(z.polygon, z.p), Containment::Exterior) << k;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        const Point2 x = intersect_lines(z.lines[i], z.lines[j]);
        EXPECT_TRUE(x.x > z.R.xmin && x.x < z.R.xmax && x.y > z.R.ymin && x.y < z.R.ymax) << k;
      }
  }
}

TEST(Zigzag, SingleLineRegion) {
  const ZigzagInstance z = zigzag_polygon(zigzag_lines(1, 2));
  const LineSpec l = z.lines[0];
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ux(z.R.xmin, z.R.xmax), uy(z.R.ymin, z.R.ymax);
  const IarResult r = iar_optimal(z.polygon, z.p);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const Point2 q{ux(rng), uy(rng)};
    if (contains(z.polygon, q) != Containment::Interior || std::abs(q.y - l.at(q.x)) < 1e-3) continue;
    if (std::abs(z.L_u.signed_distance(q)) < 1e-3) continue;
    const bool want = q.y < l.at(q.x) && z.L_u.strictly_contains(q, 0.0);
    EXPECT_EQ(attracts(z.polygon, q, z.p), want) << q.x << " " << q.y;
    EXPECT_EQ(r.contains(q, 0), want) << q.x << " " << q.y;
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Zigzag, EightLinesTraceEnvelope) {
  const ZigzagInstance z = zigzag_polygon(zigzag_lines(8, 5));
  const auto env = lower_envelope(z.lines);
  for (IarMethod m : {IarMethod::Naive, IarMethod::Optimal}) {
    const auto pts = region_vertices_inside(inverse_attraction_region(z.polygon, z.p, m), z.R);
    ASSERT_EQ(pts.size(), env.breakpoints.size());
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_LT(dist(pts[i], env.breakpoints[i]), 1e-6);
  }
}

TEST(Zigzag, DegenerateSlopes) {
  for (const std::vector<LineSpec>& bad :
       {std::vector<LineSpec>{{0.02, 0.0}, {0.02, 1.0}}, std::vector<LineSpec>{{0.2, 0.0}},
        std::vector<LineSpec>{{-0.01, 0.0}, {0.01, 0.0}}}) {
    try {
      zigzag_polygon(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DegenerateSlopes);
    }
  }
}

TEST(RandomPolygon, Triangle) {
  const SimplePolygon t = random_polygon(3, 1);
  EXPECT_EQ(t.size(), 3u);
  EXPECT_GT(t.area(), 0.0);
}

TEST(RandomPolygon, ValidAndDeterministic) {
  const SimplePolygon a = random_polygon(30, 7), b = random_polygon(30, 7);
  EXPECT_EQ(a.size(), 30u);
  EXPECT_NO_THROW(SimplePolygon::validate(a.vertices()));
  EXPECT_EQ(a.vertices(), b.vertices());
  EXPECT_NE(random_polygon(30, 8).vertices(), a.vertices());
}

TEST(RandomPolygon, TooFewVertices) {
  try {
    random_polygon(2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewVertices);
  }
}

TEST(Comb, OneIsConvex) {
  const CombInstance c = comb_polygon(1);
  EXPECT_EQ(iar_optimal(c.polygon, c.p).components.size(), 1u);
}

TEST(Comb, ComponentsAtLeastK) {
  for (std::size_t k : {2u, 8u}) {
    const CombInstance c = comb_polygon(k);
    const IarResult r = iar_optimal(c.polygon, c.p);
    EXPECT_GE(r.components.size(), k);
    EXPECT_EQ(iar_naive(c.polygon, c.p).components.size(), r.components.size());
  }
}
