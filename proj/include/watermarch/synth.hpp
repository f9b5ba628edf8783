#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "watermarch/grid.hpp"

namespace watermarch {

/// SplitMix64: the fixed pseudo-random stream behind every seeded
/// generator, chosen so fixtures reproduce bit-for-bit across platforms
/// and standard libraries.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, n) via multiply-shift reduction.
  uint64_t below(uint64_t n) {
    return uint64_t((unsigned __int128)next() * n >> 64);
  }
};

/// Radially convergent grid: every cell points at its neighbor strictly
/// closest (Euclidean) to the outlet, ties broken in N, NE, E, SE, S, SW,
/// W, NW order. The outlet must lie on the grid border and drains off-grid,
/// so the whole grid is one watershed and flow distance strictly decreases
/// along every path.
D8Grid gen_cone(int ncols, int nrows, CellIndex outlet);

/// Seeded random spanning forest. Roots are sampled from the border (a root
/// must drain off-grid) and the forest grows by Eden-style accretion: a
/// uniformly random (claimed cell, unclaimed 4-neighbor) attachment is drawn
/// until the grid is covered, each new cell pointing at its parent. Cardinal
/// attachments keep every watershed free of enclosed non-member pockets, so
/// marched boundaries match full boundary edge sets exactly.
D8Grid gen_random_forest(int ncols, int nrows, uint64_t seed,
                         double root_fraction);

/// Steepest-descent D8 from a height field: each cell points at the
/// neighbor with the greatest positive drop per unit distance (1 cardinal,
/// sqrt(2) diagonal), ties broken in N, NE, ..., NW order. Cells with no
/// lower neighbor exit toward an adjacent off-grid or masked direction
/// (cardinal exits first); with no such exit they are unfilled pits, which
/// is an error. mask entries != 0 become nodata.
D8Grid gen_from_dem(int ncols, int nrows, const std::vector<double>& heights,
                    const std::vector<uint8_t>* mask = nullptr,
                    double xllcorner = 0.0, double yllcorner = 0.0,
                    double cellsize = 1.0, long long nodata_code = -9999);

/// Height fields for the CLI and tests.
std::vector<double> make_east_slope_dem(int ncols, int nrows);
std::vector<double> make_cone_dem(int ncols, int nrows, CellIndex outlet,
                                  double steepness);

}  // namespace watermarch
