#pragma once

// Static SVG figures: polygon outline, shaded region, dashed internal region
// edges, SPM cells and trajectory arrows.

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "beacon/attraction.hpp"
#include "beacon/iar.hpp"

namespace beacon {

struct SvgOverlays {
  const IarResult* iar = nullptr;
  std::vector<Trajectory> trajectories;
  std::vector<std::vector<Point2>> cells;
  std::vector<Segment> lines;  // extra dashed segments, e.g. constraint lines
  std::optional<Point2> point;
};

// Region edges that run through the interior of P.
inline std::vector<Segment> internal_edges(const SimplePolygon& poly, const IarResult& r) {
  std::vector<Segment> out;
  for (const auto& c : r.components)
    for (std::size_t i = 0; i < c.polygon.size(); ++i) {
      const Segment e = c.polygon.edge(i);
      if (!poly.locate_on_boundary(0.5 * (e.a + e.b))) out.push_back(e);
    }
  return out;
}

namespace detail {

class SvgFrame {
 public:
  SvgFrame(const SimplePolygon& poly, double width) {
    const BBox b = poly.bbox();
    const double span = std::max(b.xmax - b.xmin, b.ymax - b.ymin);
    pad_ = 0.05 * span;
    x0_ = b.xmin - pad_;
    y1_ = b.ymax + pad_;
    scale_ = width / (span + 2 * pad_);
    w_ = (b.xmax - b.xmin + 2 * pad_) * scale_;
    h_ = (b.ymax - b.ymin + 2 * pad_) * scale_;
  }

  static std::string num(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
    return std::string(buf, r.ptr);
  }
  std::string x(double v) const { return num((v - x0_) * scale_); }
  std::string y(double v) const { return num((y1_ - v) * scale_); }
  std::string xy(Point2 p) const { return x(p.x) + "," + y(p.y); }
  double width() const { return w_; }
  double height() const { return h_; }

  std::string path(const std::vector<Point2>& ring) const {
    std::string d;
    for (std::size_t i = 0; i < ring.size(); ++i) d += (i ? " L" : "M") + xy(ring[i]);
    return d + " Z";
  }

 private:
  double pad_ = 0, x0_ = 0, y1_ = 0, scale_ = 1, w_ = 0, h_ = 0;
};

}  // namespace detail

inline std::string render_svg(const SimplePolygon& poly, const SvgOverlays& ov = {}, double width = 800.0) {
  const detail::SvgFrame f(poly, width);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::SvgFrame::num(f.width()) << "\" height=\""
     << detail::SvgFrame::num(f.height()) << "\" viewBox=\"0 0 " << detail::SvgFrame::num(f.width()) << ' '
     << detail::SvgFrame::num(f.height()) << "\">\n";
  os << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" "
        "markerHeight=\"6\" orient=\"auto-start-reverse\"><path d=\"M0,0 L10,5 L0,10 Z\" fill=\"#c0392b\"/>"
        "</marker></defs>\n";
  for (const auto& cell : ov.cells)
    os << "<path class=\"cell\" d=\"" << f.path(cell) << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"0.5\"/>\n";
  if (ov.iar)
    for (const auto& c : ov.iar->components)
      os << "<path class=\"iar\" d=\"" << f.path(c.polygon.vertices())
         << "\" fill=\"#5dade2\" fill-opacity=\"0.45\" stroke=\"none\"/>\n";
  os << "<path class=\"polygon\" d=\"" << f.path(poly.vertices())
     << "\" fill=\"none\" stroke=\"#222\" stroke-width=\"1.5\"/>\n";
  std::vector<Segment> dashed = ov.lines;
  if (ov.iar)
    for (const Segment& e : internal_edges(poly, *ov.iar)) dashed.push_back(e);
  for (const Segment& e : dashed)
    os << "<line class=\"effective\" x1=\"" << f.x(e.a.x) << "\" y1=\"" << f.y(e.a.y) << "\" x2=\"" << f.x(e.b.x)
       << "\" y2=\"" << f.y(e.b.y) << "\" stroke=\"#1a5276\" stroke-width=\"1\" stroke-dasharray=\"5,3\"/>\n";
  for (const auto& t : ov.trajectories)
    for (const auto& e : t.edges)
      os << "<line class=\"" << (e.kind == MoveKind::Pull ? "pull" : "slide") << "\" x1=\"" << f.x(e.from.x)
         << "\" y1=\"" << f.y(e.from.y) << "\" x2=\"" << f.x(e.to.x) << "\" y2=\"" << f.y(e.to.y)
         << "\" stroke=\"#c0392b\" stroke-width=\"1.2\" marker-end=\"url(#arrow)\"/>\n";
  for (const auto& t : ov.trajectories)
    os << "<circle class=\"beacon\" cx=\"" << f.x(t.beacon.x) << "\" cy=\"" << f.y(t.beacon.y)
       << "\" r=\"3\" fill=\"#f39c12\"/>\n";
  if (ov.point)
    os << "<circle class=\"point\" cx=\"" << f.x(ov.point->x) << "\" cy=\"" << f.y(ov.point->y)
       << "\" r=\"3\" fill=\"#1e8449\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace beacon
