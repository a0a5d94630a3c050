#pragma once

// Grid comparison of a computed region against trajectory simulation.

#include <vector>

#include "beacon/attraction.hpp"
#include "beacon/iar.hpp"

namespace beacon {

struct Disagreement {
  Point2 q;
  bool simulated;
  bool in_region;
};

struct OracleReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;  // too close to the region boundary
  std::vector<Disagreement> disagreements;

  bool pass() const { return disagreements.empty(); }
};

// Samples closer than `margin` to the region boundary are skipped. The
// simulation uses the point the region was actually built for.
inline OracleReport oracle_compare(const SimplePolygon& poly, const IarResult& r, const SampleGrid& grid,
                                   double margin) {
  OracleReport rep;
  for (Point2 q : grid_points(poly, grid)) {
    if (r.distance_to_boundary(q) <= margin) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    const bool sim = attracts(poly, q, r.effective_point), in = r.contains(q, 0.0);
    if (sim != in) rep.disagreements.push_back({q, sim, in});
  }
  return rep;
}

}  // namespace beacon
