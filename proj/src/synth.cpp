#include "watermarch/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace watermarch {

namespace {

bool on_border(int ncols, int nrows, CellIndex c) {
  return c.x == 0 || c.y == 0 || c.x == ncols - 1 || c.y == nrows - 1;
}

/// Off-grid exit code for a border cell: N, S, W, then E.
uint8_t border_exit_code(int ncols, int nrows, CellIndex c) {
  if (c.y == 0) return 64;
  if (c.y == nrows - 1) return 4;
  if (c.x == 0) return 16;
  if (c.x == ncols - 1) return 1;
  throw std::logic_error("border_exit_code called on interior cell");
}

}  // namespace

D8Grid gen_cone(int ncols, int nrows, CellIndex outlet) {
  if (ncols < 1 || nrows < 1) throw Error("cone dimensions must be positive");
  if (outlet.x < 0 || outlet.x >= ncols || outlet.y < 0 || outlet.y >= nrows)
    throw Error("cone outlet out of range");
  if (!on_border(ncols, nrows, outlet))
    throw Error("cone outlet must lie on the grid border");

  std::vector<uint8_t> codes(std::size_t(ncols) * nrows, 0);
  for (int y = 0; y < nrows; ++y) {
    for (int x = 0; x < ncols; ++x) {
      if (x == outlet.x && y == outlet.y) {
        codes[std::size_t(y) * ncols + x] =
            border_exit_code(ncols, nrows, outlet);
        continue;
      }
      long long best = -1;
      int best_slot = -1;
      for (int i = 0; i < 8; ++i) {
        int nx = x + kNeighborDx[i];
        int ny = y + kNeighborDy[i];
        if (nx < 0 || nx >= ncols || ny < 0 || ny >= nrows) continue;
        long long dx = nx - outlet.x;
        long long dy = ny - outlet.y;
        long long dist2 = dx * dx + dy * dy;
        if (best < 0 || dist2 < best) {
          best = dist2;
          best_slot = i;
        }
      }
      codes[std::size_t(y) * ncols + x] = uint8_t(kNeighborCode[best_slot]);
    }
  }
  return D8Grid(ncols, nrows, 0.0, 0.0, 1.0, -9999, std::move(codes));
}

D8Grid gen_random_forest(int ncols, int nrows, uint64_t seed,
                         double root_fraction) {
  if (ncols < 1 || nrows < 1)
    throw Error("forest dimensions must be positive");
  if (!(root_fraction > 0.0) || root_fraction > 1.0)
    throw Error("root_fraction must be in (0, 1]");

  SplitMix64 rng(seed);
  std::size_t n = std::size_t(ncols) * nrows;
  std::vector<uint8_t> codes(n, 0);
  std::vector<uint8_t> claimed(n, 0);

  std::vector<CellIndex> border;
  for (int y = 0; y < nrows; ++y)
    for (int x = 0; x < ncols; ++x)
      if (on_border(ncols, nrows, {x, y})) border.push_back({x, y});

  std::size_t n_roots = std::size_t(std::llround(root_fraction * double(n)));
  n_roots = std::clamp<std::size_t>(n_roots, 1, border.size());

  // Partial Fisher-Yates: the first n_roots entries become the root set.
  for (std::size_t i = 0; i < n_roots; ++i) {
    std::size_t j = i + rng.below(border.size() - i);
    std::swap(border[i], border[j]);
  }

  // Frontier of (parent, unclaimed 4-neighbor) attachment candidates.
  std::vector<std::pair<CellIndex, CellIndex>> frontier;
  auto grow_from = [&](CellIndex c) {
    static constexpr int dx[4] = {0, 1, 0, -1};
    static constexpr int dy[4] = {-1, 0, 1, 0};
    for (int i = 0; i < 4; ++i) {
      CellIndex nb{c.x + dx[i], c.y + dy[i]};
      if (nb.x < 0 || nb.x >= ncols || nb.y < 0 || nb.y >= nrows) continue;
      if (!claimed[std::size_t(nb.y) * ncols + nb.x])
        frontier.push_back({c, nb});
    }
  };

  for (std::size_t i = 0; i < n_roots; ++i) {
    CellIndex r = border[i];
    std::size_t ri = std::size_t(r.y) * ncols + r.x;
    claimed[ri] = 1;
    codes[ri] = border_exit_code(ncols, nrows, r);
    grow_from(r);
  }

  while (!frontier.empty()) {
    std::size_t pick = rng.below(frontier.size());
    auto [parent, child] = frontier[pick];
    frontier[pick] = frontier.back();
    frontier.pop_back();
    std::size_t ci = std::size_t(child.y) * ncols + child.x;
    if (claimed[ci]) continue;
    claimed[ci] = 1;
    // Point the child at its parent.
    int dx = parent.x - child.x;
    int dy = parent.y - child.y;
    uint8_t code = dy == -1 ? 64 : dy == 1 ? 4 : dx == 1 ? 1 : 16;
    codes[ci] = code;
    grow_from(child);
  }

  return D8Grid(ncols, nrows, 0.0, 0.0, 1.0, -9999, std::move(codes));
}

D8Grid gen_from_dem(int ncols, int nrows, const std::vector<double>& heights,
                    const std::vector<uint8_t>* mask, double xllcorner,
                    double yllcorner, double cellsize, long long nodata_code) {
  if (ncols < 1 || nrows < 1) throw Error("DEM dimensions must be positive");
  std::size_t n = std::size_t(ncols) * nrows;
  if (heights.size() != n) throw Error("DEM height table size mismatch");
  if (mask && mask->size() != n) throw Error("DEM mask size mismatch");

  auto masked = [&](int x, int y) {
    return mask && (*mask)[std::size_t(y) * ncols + x] != 0;
  };

  const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<uint8_t> codes(n, 0);

  for (int y = 0; y < nrows; ++y) {
    for (int x = 0; x < ncols; ++x) {
      std::size_t i = std::size_t(y) * ncols + x;
      if (masked(x, y)) continue;
      double h = heights[i];
      if (!std::isfinite(h))
        throw Error("non-finite height at (" + std::to_string(x) + "," +
                    std::to_string(y) + ")");

      auto exists = [&](int nx, int ny) {
        return nx >= 0 && nx < ncols && ny >= 0 && ny < nrows &&
               !masked(nx, ny);
      };

      double best = 0.0;
      int best_slot = -1;
      for (int s = 0; s < 8; ++s) {
        int nx = x + kNeighborDx[s];
        int ny = y + kNeighborDy[s];
        if (!exists(nx, ny)) continue;
        double drop = h - heights[std::size_t(ny) * ncols + nx];
        bool diagonal = kNeighborDx[s] != 0 && kNeighborDy[s] != 0;
        if (diagonal) drop *= kInvSqrt2;
        if (drop > best) {  // strict: ties resolve to the earlier slot
          best = drop;
          best_slot = s;
        }
      }

      if (best_slot < 0) {
        // No lower neighbor. A cell next to an off-grid or masked direction
        // exits toward the lowest one, extrapolating the local gradient:
        // the virtual drop outward in direction s equals the rise toward
        // its opposite neighbor. Falls back to the first cardinal exit when
        // the terrain is flat.
        int fallback_cardinal = -1, fallback_diagonal = -1;
        for (int s = 0; s < 8; ++s) {
          int nx = x + kNeighborDx[s];
          int ny = y + kNeighborDy[s];
          if (exists(nx, ny)) continue;
          bool diagonal = kNeighborDx[s] != 0 && kNeighborDy[s] != 0;
          if (diagonal) {
            if (fallback_diagonal < 0) fallback_diagonal = s;
          } else if (fallback_cardinal < 0) {
            fallback_cardinal = s;
          }
          int ox = x - kNeighborDx[s];
          int oy = y - kNeighborDy[s];
          if (!exists(ox, oy)) continue;
          double drop = heights[std::size_t(oy) * ncols + ox] - h;
          if (diagonal) drop *= kInvSqrt2;
          if (drop > best) {
            best = drop;
            best_slot = s;
          }
        }
        if (best_slot < 0)
          best_slot =
              fallback_cardinal >= 0 ? fallback_cardinal : fallback_diagonal;
        if (best_slot < 0)
          throw Error("unfilled pit at (" + std::to_string(x) + "," +
                      std::to_string(y) + ")");
      }
      codes[i] = uint8_t(kNeighborCode[best_slot]);
    }
  }

  return D8Grid(ncols, nrows, xllcorner, yllcorner, cellsize, nodata_code,
                std::move(codes));
}

std::vector<double> make_east_slope_dem(int ncols, int nrows) {
  std::vector<double> h(std::size_t(ncols) * nrows);
  for (int y = 0; y < nrows; ++y)
    for (int x = 0; x < ncols; ++x)
      h[std::size_t(y) * ncols + x] = double(ncols - 1 - x);
  return h;
}

std::vector<double> make_cone_dem(int ncols, int nrows, CellIndex outlet,
                                  double steepness) {
  // Saturating profile: height differences are dominated by whichever
  // neighbor sits closest to the outlet, matching gen_cone's descent.
  std::vector<double> h(std::size_t(ncols) * nrows);
  for (int y = 0; y < nrows; ++y) {
    for (int x = 0; x < ncols; ++x) {
      double dx = x - outlet.x;
      double dy = y - outlet.y;
      double dist = std::sqrt(dx * dx + dy * dy);
      h[std::size_t(y) * ncols + x] = 1.0 - std::exp(-steepness * dist);
    }
  }
  return h;
}

}  // namespace watermarch
