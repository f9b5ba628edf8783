#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "watermarch/errors.hpp"

namespace watermarch {

/// Column/row address of one raster cell. Row 0 is the northernmost row,
/// so y grows southward.
struct CellIndex {
  int x = 0;
  int y = 0;
  bool operator==(const CellIndex&) const = default;
};

/// Corner point of the dual lattice. Valid coordinates run [0, ncols] and
/// [0, nrows]; LatticePoint(x, y) is the northwest corner of cell (x, y).
struct LatticePoint {
  int x = 0;
  int y = 0;
  bool operator==(const LatticePoint&) const = default;
};

/// Cardinal march direction, mod-4 arithmetic. Under the y-south raster
/// convention North means y-1 and South means y+1.
enum class Direction : int { North = 0, East = 1, South = 2, West = 3 };

inline Direction rotate_cw(Direction d) { return Direction((int(d) + 1) & 3); }
inline Direction rotate_ccw(Direction d) { return Direction((int(d) + 3) & 3); }
inline Direction opposite(Direction d) { return Direction((int(d) + 2) & 3); }

enum class CellClass { Root, Internal, Nodata };

/// Result of following a cell's flow code one step.
struct Downstream {
  enum class Kind { Cell, OffGrid, IntoNodata };
  Kind kind = Kind::OffGrid;
  CellIndex cell{};  // valid only when kind == Kind::Cell
};

/// Neighbor enumeration order used everywhere a deterministic scan of the
/// 8-neighborhood is needed: N, NE, E, SE, S, SW, W, NW.
inline constexpr std::array<int, 8> kNeighborDx = {0, 1, 1, 1, 0, -1, -1, -1};
inline constexpr std::array<int, 8> kNeighborDy = {-1, -1, 0, 1, 1, 1, 0, -1};
/// D8 code a cell would carry to point at the neighbor in slot i above.
inline constexpr std::array<int, 8> kNeighborCode = {64, 128, 1, 2, 4, 8, 16, 32};

/// Flow offsets indexed by lg(code): code 1=E, 2=SE, 4=S, 8=SW, 16=W,
/// 32=NW, 64=N, 128=NE (the ESRI convention).
inline constexpr std::array<int, 8> kFlowDx = {1, 1, 0, -1, -1, -1, 0, 1};
inline constexpr std::array<int, 8> kFlowDy = {0, 1, 1, 1, 0, -1, -1, -1};

bool is_legal_d8_code(long long value);

/// Immutable D8 flow-direction raster with georeferencing header.
/// Codes are stored packed (0 = nodata); the original nodata_code is kept
/// so serialization is lossless.
class D8Grid {
public:
  /// Builds from raw cell values as read from a file. Values must be legal
  /// D8 codes or equal to nodata_code.
  D8Grid(int ncols, int nrows, double xllcorner, double yllcorner,
         double cellsize, long long nodata_code,
         const std::vector<long long>& values);

  /// Builds from pre-packed codes (0 = nodata). Used by generators.
  D8Grid(int ncols, int nrows, double xllcorner, double yllcorner,
         double cellsize, long long nodata_code, std::vector<uint8_t> packed);

  int ncols() const { return ncols_; }
  int nrows() const { return nrows_; }
  double xllcorner() const { return xllcorner_; }
  double yllcorner() const { return yllcorner_; }
  double cellsize() const { return cellsize_; }
  long long nodata_code() const { return nodata_code_; }

  std::size_t cell_count() const { return codes_.size(); }
  std::size_t valid_count() const { return valid_count_; }

  bool in_range(CellIndex c) const {
    return c.x >= 0 && c.x < ncols_ && c.y >= 0 && c.y < nrows_;
  }
  bool in_lattice(LatticePoint p) const {
    return p.x >= 0 && p.x <= ncols_ && p.y >= 0 && p.y <= nrows_;
  }
  std::size_t index(CellIndex c) const {
    return std::size_t(c.y) * ncols_ + c.x;
  }

  bool is_nodata(CellIndex c) const { return codes_[index(c)] == 0; }
  uint8_t packed_code(CellIndex c) const { return codes_[index(c)]; }
  /// The cell value as it appears in the file: a D8 code or nodata_code.
  long long value_at(CellIndex c) const {
    uint8_t p = codes_[index(c)];
    return p == 0 ? nodata_code_ : p;
  }

  bool operator==(const D8Grid&) const = default;

private:
  int ncols_;
  int nrows_;
  double xllcorner_;
  double yllcorner_;
  double cellsize_;
  long long nodata_code_;
  std::vector<uint8_t> codes_;
  std::size_t valid_count_ = 0;

  void validate_header() const;
};

/// Follows c's flow code one step. Throws std::invalid_argument when called
/// on a nodata cell.
Downstream downstream(const D8Grid& g, CellIndex c);

CellClass classify_cell(const D8Grid& g, CellIndex c);

/// Fixed-capacity list of the 0-8 neighbors draining into a cell,
/// in N, NE, E, SE, S, SW, W, NW order.
struct InflowNeighbors {
  std::array<CellIndex, 8> cells{};
  int count = 0;

  const CellIndex* begin() const { return cells.data(); }
  const CellIndex* end() const { return cells.data() + count; }
};

InflowNeighbors inflow_neighbors(const D8Grid& g, CellIndex c);

/// The four corner lattice points of a cell.
struct CellCorners {
  LatticePoint nw, ne, se, sw;
};

CellCorners corners(CellIndex c);

/// Corner k of a cell with k in {0=nw, 1=ne, 2=se, 3=sw}.
LatticePoint corner(CellIndex c, int k);

/// The cell occupying face slot k around a lattice point, with
/// k in {0=nw, 1=ne, 2=se, 3=sw}. May be out of range; callers check.
inline CellIndex face_cell(LatticePoint p, int k) {
  switch (k & 3) {
    case 0: return {p.x - 1, p.y - 1};
    case 1: return {p.x, p.y - 1};
    case 2: return {p.x, p.y};
    default: return {p.x - 1, p.y};
  }
}

/// The four faces around a lattice point; absent when outside the raster.
struct Faces {
  std::optional<CellIndex> nw, ne, se, sw;
};

Faces faces(const D8Grid& g, LatticePoint p);

struct WorldPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Georeferencing shared by D8 grids and MNS grids.
struct Georef {
  double xllcorner = 0.0;
  double yllcorner = 0.0;
  double cellsize = 1.0;
  int nrows = 0;
};

inline Georef georef(const D8Grid& g) {
  return {g.xllcorner(), g.yllcorner(), g.cellsize(), g.nrows()};
}

inline WorldPoint world_coords(const Georef& r, LatticePoint p) {
  return {r.xllcorner + p.x * r.cellsize,
          r.yllcorner + (r.nrows - p.y) * r.cellsize};
}

inline WorldPoint world_coords(const D8Grid& g, LatticePoint p) {
  return world_coords(georef(g), p);
}

/// One directed flow cycle, in flow order.
struct CycleError {
  std::vector<CellIndex> cycle;
};

/// Checks that every valid cell's downstream chain terminates at a root.
/// Returns one witness cycle otherwise. O(n) via memoized reachability.
std::optional<CycleError> validate_acyclic(const D8Grid& g);

}  // namespace watermarch
