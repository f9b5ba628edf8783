#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "watermarch/grid.hpp"

namespace watermarch {

/// Counters for one labeling traversal. A well-formed run pushes and pops
/// every valid cell exactly once.
struct TraversalStats {
  uint64_t pushes = 0;
  uint64_t pops = 0;
  uint64_t cells_labeled = 0;
};

/// Per-cell discovery/finish interval labels. d is a bijection onto
/// [1, n_valid] over valid cells; 0 marks nodata in both tables. A cell u
/// drains through v exactly when d(v) <= d(u) <= f(v).
class MnsGrid {
public:
  MnsGrid(int ncols, int nrows, double xllcorner, double yllcorner,
          double cellsize, std::vector<uint64_t> d, std::vector<uint64_t> f);

  int ncols() const { return ncols_; }
  int nrows() const { return nrows_; }
  double xllcorner() const { return xllcorner_; }
  double yllcorner() const { return yllcorner_; }
  double cellsize() const { return cellsize_; }

  std::size_t cell_count() const { return d_.size(); }
  uint64_t valid_count() const { return valid_count_; }

  bool in_range(CellIndex c) const {
    return c.x >= 0 && c.x < ncols_ && c.y >= 0 && c.y < nrows_;
  }
  bool in_lattice(LatticePoint p) const {
    return p.x >= 0 && p.x <= ncols_ && p.y >= 0 && p.y <= nrows_;
  }
  std::size_t index(CellIndex c) const {
    return std::size_t(c.y) * ncols_ + c.x;
  }

  bool is_nodata(CellIndex c) const { return d_[index(c)] == 0; }
  uint64_t discovery(CellIndex c) const { return d_[index(c)]; }
  uint64_t finish(CellIndex c) const { return f_[index(c)]; }

  /// Watershed size of c, f - d + 1. Zero for nodata.
  uint64_t area_cells(CellIndex c) const {
    uint64_t d = discovery(c);
    return d == 0 ? 0 : finish(c) - d + 1;
  }

  bool operator==(const MnsGrid&) const = default;

private:
  int ncols_;
  int nrows_;
  double xllcorner_;
  double yllcorner_;
  double cellsize_;
  std::vector<uint64_t> d_;
  std::vector<uint64_t> f_;
  uint64_t valid_count_ = 0;
};

inline Georef georef(const MnsGrid& m) {
  return {m.xllcorner(), m.yllcorner(), m.cellsize(), m.nrows()};
}

/// Depth-first labeling of the inflow forest. Root cells are visited in
/// row-major order under a virtual super-root; children of a cell are its
/// inflow neighbors in N, NE, E, SE, S, SW, W, NW order. The traversal is
/// iterative: recursion depth would equal the longest flow path.
/// Throws on a grid with no valid cells and on cyclic flow.
std::pair<MnsGrid, TraversalStats> compute_mns(const D8Grid& g);

/// Interval membership test: does u drain through v_star? Absent (off-grid)
/// and nodata cells are outside every watershed.
bool subtree_contains(const MnsGrid& m, CellIndex v_star,
                      std::optional<CellIndex> u);

/// Binary MNS format, little-endian: magic "MNS1"; u32 ncols; u32 nrows;
/// f64 xllcorner, yllcorner, cellsize; then ncols*nrows records row-major
/// (north row first) of u64 d then u64 f; 0 = nodata sentinel.
void write_mns(const MnsGrid& m, std::ostream& out);
MnsGrid read_mns(std::istream& in);

MnsGrid load_mns(const std::string& path);
void save_mns(const MnsGrid& m, const std::string& path);

}  // namespace watermarch
