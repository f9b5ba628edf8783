#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "watermarch/grid.hpp"
#include "watermarch/mns.hpp"

namespace watermarch {

/// Closed lattice walk around a watershed, counterclockwise in world
/// coordinates with the interior on the left. The first point is not
/// repeated at the end; closure is implicit.
struct BoundaryPolygon {
  std::vector<LatticePoint> points;

  std::size_t size() const { return points.size(); }

  /// Shoelace area in cell units, positive when the interior lies on the
  /// left of the direction of travel (the orientation delineate emits).
  long long signed_area_cells() const;
};

/// Label-read instrumentation for one delineation.
struct ReadCounter {
  uint64_t face_reads = 0;      // d-label lookups
  uint64_t boundary_tests = 0;  // boundary-point evaluations (probes)
  uint64_t accepted_moves = 0;  // lattice edges added to the walk
};

/// A march entry point: a boundary lattice point plus the initial probe
/// heading.
struct MarchStart {
  LatticePoint point;
  Direction heading;
};

/// One unit step on the lattice. Pure table arithmetic; the result may lie
/// outside any particular lattice, callers enforce bounds where needed.
inline LatticePoint lattice_move(LatticePoint p, Direction mu) {
  switch (mu) {
    case Direction::North: return {p.x, p.y - 1};
    case Direction::East: return {p.x + 1, p.y};
    case Direction::South: return {p.x, p.y + 1};
    default: return {p.x - 1, p.y};
  }
}

/// True when at least one face of p lies in v_star's watershed and at least
/// one does not (absent and nodata faces count as outside).
bool boundary_point(const MnsGrid& m, CellIndex v_star, LatticePoint p);

/// Start location from the pour point's own flow code: corner-selector and
/// heading tables indexed by lg(code). The chosen corner always touches both
/// v_star and its downstream cell, so it is on the boundary.
MarchStart start_march(const D8Grid& g, const MnsGrid& m, CellIndex v_star);

/// Start location from labels alone (no flow codes available, e.g. when
/// only an MNS file is on hand): scans v_star's corners for a boundary
/// point, which always exists.
MarchStart start_march(const MnsGrid& m, CellIndex v_star);

/// Marches the watershed boundary of v_star. At most three probes per
/// accepted move; face_reads stays within 12*|polygon| + 12.
std::pair<BoundaryPolygon, ReadCounter> delineate(const D8Grid& g,
                                                  const MnsGrid& m,
                                                  CellIndex v_star);

/// Same march, entered via the label-only start.
std::pair<BoundaryPolygon, ReadCounter> delineate(const MnsGrid& m,
                                                  CellIndex v_star);

}  // namespace watermarch
