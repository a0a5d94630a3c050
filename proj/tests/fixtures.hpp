#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "beacon/polygon.hpp"

namespace beacon::fixtures {

inline SimplePolygon square4() { return SimplePolygon::validate({{0, 0}, {4, 0}, {4, 4}, {0, 4}}); }

// Rectangle with a triangular spike cut into the left wall, tip at (3,3).
inline SimplePolygon spike6() {
  return SimplePolygon::validate({{0, 0}, {8, 0}, {8, 6}, {0, 6}, {0, 4}, {3, 3}, {0, 2}});
}

inline SimplePolygon l_polygon() {
  return SimplePolygon::validate({{0, 0}, {4, 0}, {4, 4}, {2, 4}, {2, 2}, {0, 2}});
}

inline constexpr std::size_t kSpikeTip = 5;
inline constexpr std::size_t kLReflex = 4;

// Star-shaped around the origin with random radii, so usually full of reflex vertices.
inline SimplePolygon random_star(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> r(1.0, 5.0);
  std::uniform_real_distribution<double> a(0.0, 2.0 * std::numbers::pi);
  std::vector<double> angles;
  for (int i = 0; i < n; ++i) angles.push_back(a(rng));
  std::sort(angles.begin(), angles.end());
  std::vector<Point2> pts;
  for (double t : angles) {
    const double rad = r(rng);
    pts.push_back({rad * std::cos(t), rad * std::sin(t)});
  }
  return SimplePolygon::validate(pts);
}

inline Point2 random_interior(const SimplePolygon& p, std::mt19937& rng) {
  const BBox b = p.bbox();
  std::uniform_real_distribution<double> x(b.xmin, b.xmax), y(b.ymin, b.ymax);
  for (;;) {
    const Point2 q{x(rng), y(rng)};
    if (contains(p, q) == Containment::Interior) return q;
  }
}

}  // namespace beacon::fixtures
