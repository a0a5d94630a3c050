#pragma once

// Symmetric-difference area between point sets given as polygon lists, via
// Boost.Geometry. Test-only: an independent route for region comparisons.

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include <vector>

#include "beacon/geom.hpp"

namespace beacon::fixtures {

namespace bg = boost::geometry;
using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, false>;  // counter-clockwise
using BgMulti = bg::model::multi_polygon<BgPolygon>;

inline BgMulti to_multi(const std::vector<std::vector<Point2>>& rings) {
  BgMulti out;
  for (const auto& r : rings) {
    BgPolygon poly;
    for (Point2 p : r) bg::append(poly.outer(), BgPoint(p.x, p.y));
    bg::correct(poly);
    out.push_back(std::move(poly));
  }
  return out;
}

inline double symmetric_difference_area(const std::vector<std::vector<Point2>>& a,
                                        const std::vector<std::vector<Point2>>& b) {
  BgMulti out;
  bg::sym_difference(to_multi(a), to_multi(b), out);
  return bg::area(out);
}

}  // namespace beacon::fixtures
