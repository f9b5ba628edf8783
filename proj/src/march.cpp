#include "watermarch/march.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace watermarch {

long long BoundaryPolygon::signed_area_cells() const {
  // Cross products accumulate in screen coordinates (y south); negate so a
  // walk with the interior on its left comes out positive.
  long long twice = 0;
  std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const LatticePoint& a = points[i];
    const LatticePoint& b = points[(i + 1) % n];
    twice += (long long)a.x * b.y - (long long)b.x * a.y;
  }
  return -twice / 2;
}

namespace {

struct Interval {
  uint64_t lo = 0;
  uint64_t hi = 0;
};

Interval interval_of(const MnsGrid& m, CellIndex v_star) {
  if (!m.in_range(v_star) || m.is_nodata(v_star))
    throw std::invalid_argument("pour point is nodata or out of range");
  return {m.discovery(v_star), m.finish(v_star)};
}

/// Membership of the four faces around a lattice point, read in one pass.
struct FaceScan {
  bool inside[4] = {false, false, false, false};
  bool any = false;
  bool all = true;
};

FaceScan scan_faces(const MnsGrid& m, const Interval& iv, LatticePoint p,
                    ReadCounter* rc) {
  FaceScan s;
  for (int k = 0; k < 4; ++k) {
    CellIndex c = face_cell(p, k);
    bool in = false;
    if (m.in_range(c)) {
      if (rc) ++rc->face_reads;
      uint64_t d = m.discovery(c);
      in = d >= iv.lo && d <= iv.hi;  // d == 0 (nodata) can never pass
    }
    s.inside[k] = in;
    s.any |= in;
    s.all &= in;
  }
  return s;
}

/// March loop state (current point, heading, first edge, probe budget).
struct MarchState {
  LatticePoint current{};
  Direction heading = Direction::North;
  LatticePoint first_from{};
  LatticePoint first_to{};
  bool have_first_edge = false;
  int probes_this_step = 0;
};

std::pair<BoundaryPolygon, ReadCounter> march_loop(const MnsGrid& m,
                                                   const Interval& iv,
                                                   MarchStart start,
                                                   ReadCounter rc) {
  BoundaryPolygon poly;
  poly.points.push_back(start.point);

  MarchState st;
  st.current = start.point;
  st.heading = start.heading;

  // A full circuit uses each boundary edge once, so the walk can never
  // outlive the edge count of the lattice hull.
  const uint64_t max_moves =
      4ull * (uint64_t(m.ncols()) + 1) * (uint64_t(m.nrows()) + 1) + 4;

  while (true) {
    LatticePoint cand = lattice_move(st.current, st.heading);

    // Termination is edge-based: the directed first edge coming up again
    // means the circuit closed. Purely geometric, costs no label reads.
    if (st.have_first_edge && st.current == st.first_from &&
        cand == st.first_to)
      break;

    // Probe the candidate: boundary membership plus the interior-left edge
    // test, all from the same four face reads. The edge test keeps the
    // watershed on the left and rejects both fold-backs and chords between
    // boundary points (e.g. across a one-cell notch); it implies the plain
    // boundary-point predicate.
    FaceScan fs = scan_faces(m, iv, cand, &rc);
    ++rc.boundary_tests;
    int mu = int(st.heading);
    bool edge_ok = fs.inside[(mu + 3) & 3] && !fs.inside[(mu + 2) & 3];

    if (edge_ok) {
      if (!st.have_first_edge) {
        st.first_from = st.current;
        st.first_to = cand;
        st.have_first_edge = true;
      }
      poly.points.push_back(cand);
      ++rc.accepted_moves;
      st.current = cand;
      st.heading = rotate_cw(st.heading);
      st.probes_this_step = 0;
      if (rc.accepted_moves > max_moves)
        throw std::logic_error(
            "boundary march failed to close (inconsistent labels?)");
    } else {
      st.heading = rotate_ccw(st.heading);
      // A boundary point always yields a valid continuation within the
      // three non-folding directions; a third miss means broken labels.
      if (++st.probes_this_step >= 3)
        throw std::logic_error(
            "boundary march found no continuation at " +
            std::to_string(st.current.x) + "," + std::to_string(st.current.y));
    }
  }

  // The final accepted move re-entered the start point; drop the duplicate.
  if (poly.points.size() < 2 || !(poly.points.back() == poly.points.front()))
    throw std::logic_error("boundary march ended off its start point");
  poly.points.pop_back();
  return {std::move(poly), rc};
}

}  // namespace

bool boundary_point(const MnsGrid& m, CellIndex v_star, LatticePoint p) {
  Interval iv = interval_of(m, v_star);
  FaceScan s = scan_faces(m, iv, p, nullptr);
  return s.any && !s.all;
}

MarchStart start_march(const D8Grid& g, const MnsGrid& m, CellIndex v_star) {
  if (g.ncols() != m.ncols() || g.nrows() != m.nrows())
    throw std::invalid_argument("flow grid and label grid dimensions differ");
  if (!g.in_range(v_star) || g.is_nodata(v_star))
    throw std::invalid_argument("pour point is nodata or out of range");
  // Corner selector and initial heading per flow code, indexed by lg(code).
  // Corner slots are 0=nw, 1=ne, 2=se, 3=sw; the selected corner is shared
  // with the downstream cell, which is never inside the watershed.
  static constexpr int kStartCorner[8] = {1, 2, 2, 3, 3, 0, 0, 1};
  static constexpr Direction kStartHeading[8] = {
      Direction::East,  Direction::East,  Direction::South, Direction::South,
      Direction::West,  Direction::West,  Direction::North, Direction::North};
  int idx = std::countr_zero(unsigned(g.packed_code(v_star)));
  return {corner(v_star, kStartCorner[idx]), kStartHeading[idx]};
}

MarchStart start_march(const MnsGrid& m, CellIndex v_star) {
  if (!m.in_range(v_star) || m.is_nodata(v_star))
    throw std::invalid_argument("pour point is nodata or out of range");
  // At least one corner of the pour point sits on the boundary. Heading k
  // makes the (at most three) potentially valid outgoing edges come up
  // within three probes.
  for (int k = 0; k < 4; ++k) {
    LatticePoint p = corner(v_star, k);
    if (boundary_point(m, v_star, p)) return {p, Direction(k)};
  }
  throw std::logic_error("no corner of the pour point is on the boundary");
}

std::pair<BoundaryPolygon, ReadCounter> delineate(const D8Grid& g,
                                                  const MnsGrid& m,
                                                  CellIndex v_star) {
  ReadCounter rc;
  Interval iv = interval_of(m, v_star);
  return march_loop(m, iv, start_march(g, m, v_star), rc);
}

std::pair<BoundaryPolygon, ReadCounter> delineate(const MnsGrid& m,
                                                  CellIndex v_star) {
  ReadCounter rc;
  Interval iv = interval_of(m, v_star);
  return march_loop(m, iv, start_march(m, v_star), rc);
}

}  // namespace watermarch
