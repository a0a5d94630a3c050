#pragma once

// Timing harness for the region construction on generated families.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "beacon/generators.hpp"
#include "beacon/io.hpp"

namespace beacon {

struct BenchRecord {
  std::string family;
  std::size_t n = 0;  // polygon vertices
  std::string stage;
  double seconds = 0.0;
  std::size_t iar_vertices = 0;
  std::optional<double> ratio;  // against the same stage at the previous size
};

struct BenchInstance {
  SimplePolygon polygon;
  Point2 p;
};

// Zigzag and comb sizes are rounded to what the construction can produce.
inline BenchInstance bench_instance(const std::string& family, std::size_t n, std::uint64_t seed) {
  if (family == "zigzag") {
    const std::size_t k = std::max<std::size_t>(1, n > 8 ? (n - 8) / 4 : 1);
    ZigzagInstance z = zigzag_polygon(zigzag_lines(k, seed));
    return {std::move(z.polygon), z.p};
  }
  if (family == "random") {
    SimplePolygon poly = random_polygon(std::max<std::size_t>(n, 3), seed);
    const Triangulation tri = triangulate(poly);
    const auto& t = tri.triangles.front();
    const Point2 p = (1.0 / 3.0) * (poly.vertex(t[0]) + poly.vertex(t[1]) + poly.vertex(t[2]));
    return {std::move(poly), p};
  }
  if (family == "comb") {
    CombInstance c = comb_polygon(std::max<std::size_t>(2, n > 4 ? (n - 4) / 6 + 1 : 2));
    return {std::move(c.polygon), c.p};
  }
  throw Error(ErrorCode::DegenerateInput, "unknown family '" + family + "'");
}

// Best of `repetitions` runs per size; sizes are processed in the given order.
inline std::vector<BenchRecord> bench(const std::string& family, const std::vector<std::size_t>& sizes,
                                      std::size_t repetitions, std::uint64_t seed,
                                      IarMethod method = IarMethod::Optimal) {
  std::vector<BenchRecord> out;
  if (repetitions == 0) return out;
  static const char* stages[] = {"triangulation", "spm", "constraints", "free_regions", "assembly", "total"};
  std::optional<std::array<double, 6>> prev;
  for (std::size_t n : sizes) {
    const BenchInstance inst = bench_instance(family, n, seed);
    std::array<double, 6> best;
    best.fill(std::numeric_limits<double>::infinity());
    std::size_t vertices = 0;
    for (std::size_t r = 0; r < repetitions; ++r) {
      IarTimings t;
      const IarResult res = inverse_attraction_region(inst.polygon, inst.p, method, &t);
      vertices = res.stats.total_vertices;
      const std::array<double, 6> secs{t.triangulation, t.spm, t.constraints, t.free_regions, t.assembly, t.total()};
      for (std::size_t i = 0; i < 6; ++i) best[i] = std::min(best[i], secs[i]);
    }
    for (std::size_t i = 0; i < 6; ++i) {
      BenchRecord rec{family, inst.polygon.size(), stages[i], best[i], vertices, std::nullopt};
      if (prev && (*prev)[i] > 0.0) rec.ratio = best[i] / (*prev)[i];
      out.push_back(std::move(rec));
    }
    prev = best;
  }
  return out;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "family,n,stage,seconds,iar_vertices,ratio\n";
  for (const auto& r : records)
    os << r.family << ',' << r.n << ',' << r.stage << ',' << format_double(r.seconds) << ',' << r.iar_vertices << ','
       << (r.ratio ? format_double(*r.ratio) : "") << '\n';
}

// Geometric mean of successive total-time ratios.
inline double mean_doubling_ratio(const std::vector<BenchRecord>& records) {
  double log_sum = 0.0;
  std::size_t count = 0;
  for (const auto& r : records)
    if (r.stage == "total" && r.ratio) {
      log_sum += std::log(*r.ratio);
      ++count;
    }
  return count ? std::exp(log_sum / static_cast<double>(count)) : 0.0;
}

}  // namespace beacon
