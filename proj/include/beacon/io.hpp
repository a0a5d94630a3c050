#pragma once

// Plain-text polygon blocks: a vertex count, then one "x y" line per vertex.
// Lines starting with '#' are comments. Numbers are written with 17
// significant digits so that reading them back is bit-exact.

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "beacon/iar.hpp"

namespace beacon {

inline std::string format_double(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

inline double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || r.ec != std::errc{} || r.ptr != s.data() + s.size())
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(s) + "'");
  return x;
}

inline std::string format_point(Point2 p) { return format_double(p.x) + " " + format_double(p.y); }

// "x,y" as used on the command line.
inline Point2 parse_point(std::string_view s) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw Error(ErrorCode::ParseError, "expected x,y");
  return {parse_double(s.substr(0, comma)), parse_double(s.substr(comma + 1))};
}

inline void write_polygon(std::ostream& os, const std::vector<Point2>& pts) {
  os << pts.size() << '\n';
  for (Point2 p : pts) os << format_point(p) << '\n';
}

inline void write_polygon(std::ostream& os, const SimplePolygon& poly) { write_polygon(os, poly.vertices()); }

namespace detail {

// Next non-blank, non-comment line split into whitespace tokens; empty at EOF.
inline std::vector<std::string> next_tokens(std::istream& is) {
  std::string line;
  while (std::getline(is, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> out;
    for (std::string t; ls >> t;) out.push_back(t);
    return out;
  }
  return {};
}

}  // namespace detail

// Reads one polygon block. Extra lines after the block are left in the stream.
inline std::vector<Point2> read_polygon(std::istream& is) {
  const auto head = detail::next_tokens(is);
  if (head.size() != 1) throw Error(ErrorCode::ParseError, "expected a vertex count");
  std::size_t n = 0;
  const auto r = std::from_chars(head[0].data(), head[0].data() + head[0].size(), n);
  if (r.ec != std::errc{} || r.ptr != head[0].data() + head[0].size())
    throw Error(ErrorCode::ParseError, "bad vertex count '" + head[0] + "'");
  std::vector<Point2> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = detail::next_tokens(is);
    if (t.size() != 2) throw Error(ErrorCode::ParseError, "vertex line " + std::to_string(i + 1) + " needs x y");
    pts.push_back({parse_double(t[0]), parse_double(t[1])});
  }
  return pts;
}

inline std::vector<Point2> parse_polygon(const std::string& text) {
  std::istringstream is(text);
  return read_polygon(is);
}

inline std::string emit_polygon(const std::vector<Point2>& pts) {
  std::ostringstream os;
  write_polygon(os, pts);
  return os.str();
}

inline SimplePolygon load_polygon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return SimplePolygon::validate(read_polygon(in));
}

// Distinguished point line written after generated polygons.
inline void write_point_line(std::ostream& os, Point2 p) { os << "P " << format_point(p) << '\n'; }

inline void write_components(std::ostream& os, const IarResult& r) {
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    os << "COMPONENT " << i << '\n';
    write_polygon(os, r.components[i].polygon);
  }
}

}  // namespace beacon
