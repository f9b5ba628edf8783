#include "watermarch/grid.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace watermarch {

bool is_legal_d8_code(long long value) {
  return value == 1 || value == 2 || value == 4 || value == 8 || value == 16 ||
         value == 32 || value == 64 || value == 128;
}

void D8Grid::validate_header() const {
  if (ncols_ < 1 || nrows_ < 1)
    throw Error("grid dimensions must be at least 1x1");
  if (!(cellsize_ > 0.0)) throw Error("cellsize must be positive");
  if (is_legal_d8_code(nodata_code_))
    throw Error("nodata code " + std::to_string(nodata_code_) +
                " collides with a legal D8 code");
  if (codes_.size() != std::size_t(ncols_) * std::size_t(nrows_))
    throw Error("cell table size does not match ncols*nrows");
}

D8Grid::D8Grid(int ncols, int nrows, double xllcorner, double yllcorner,
               double cellsize, long long nodata_code,
               const std::vector<long long>& values)
    : ncols_(ncols), nrows_(nrows), xllcorner_(xllcorner),
      yllcorner_(yllcorner), cellsize_(cellsize), nodata_code_(nodata_code) {
  codes_.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    long long v = values[i];
    if (v == nodata_code) {
      codes_[i] = 0;
    } else if (is_legal_d8_code(v)) {
      codes_[i] = uint8_t(v);
      ++valid_count_;
    } else {
      throw Error("illegal D8 code " + std::to_string(v) + " at cell index " +
                  std::to_string(i));
    }
  }
  validate_header();
}

D8Grid::D8Grid(int ncols, int nrows, double xllcorner, double yllcorner,
               double cellsize, long long nodata_code,
               std::vector<uint8_t> packed)
    : ncols_(ncols), nrows_(nrows), xllcorner_(xllcorner),
      yllcorner_(yllcorner), cellsize_(cellsize), nodata_code_(nodata_code),
      codes_(std::move(packed)) {
  for (uint8_t p : codes_) {
    if (p != 0 && !is_legal_d8_code(p))
      throw Error("illegal packed D8 code " + std::to_string(int(p)));
    if (p != 0) ++valid_count_;
  }
  validate_header();
}

Downstream downstream(const D8Grid& g, CellIndex c) {
  uint8_t code = g.packed_code(c);
  if (code == 0)
    throw std::invalid_argument("downstream() called on a nodata cell");
  int idx = std::countr_zero(unsigned(code));
  CellIndex next{c.x + kFlowDx[idx], c.y + kFlowDy[idx]};
  if (!g.in_range(next)) return {Downstream::Kind::OffGrid, {}};
  if (g.is_nodata(next)) return {Downstream::Kind::IntoNodata, {}};
  return {Downstream::Kind::Cell, next};
}

CellClass classify_cell(const D8Grid& g, CellIndex c) {
  if (g.is_nodata(c)) return CellClass::Nodata;
  Downstream d = downstream(g, c);
  return d.kind == Downstream::Kind::Cell ? CellClass::Internal
                                          : CellClass::Root;
}

InflowNeighbors inflow_neighbors(const D8Grid& g, CellIndex c) {
  InflowNeighbors out;
  for (int i = 0; i < 8; ++i) {
    CellIndex n{c.x + kNeighborDx[i], c.y + kNeighborDy[i]};
    if (!g.in_range(n) || g.is_nodata(n)) continue;
    // n flows into c iff its code points back along this offset.
    int back = (i + 4) & 7;
    if (g.packed_code(n) == kNeighborCode[back])
      out.cells[out.count++] = n;
  }
  return out;
}

CellCorners corners(CellIndex c) {
  return {{c.x, c.y}, {c.x + 1, c.y}, {c.x + 1, c.y + 1}, {c.x, c.y + 1}};
}

LatticePoint corner(CellIndex c, int k) {
  switch (k & 3) {
    case 0: return {c.x, c.y};
    case 1: return {c.x + 1, c.y};
    case 2: return {c.x + 1, c.y + 1};
    default: return {c.x, c.y + 1};
  }
}

Faces faces(const D8Grid& g, LatticePoint p) {
  Faces f;
  auto pick = [&](int k) -> std::optional<CellIndex> {
    CellIndex c = face_cell(p, k);
    if (g.in_range(c)) return c;
    return std::nullopt;
  };
  f.nw = pick(0);
  f.ne = pick(1);
  f.se = pick(2);
  f.sw = pick(3);
  return f;
}

std::optional<CycleError> validate_acyclic(const D8Grid& g) {
  // 0 = unvisited, 1 = on current path, 2 = known to terminate.
  std::vector<uint8_t> state(g.cell_count(), 0);
  std::vector<std::size_t> path_pos(g.cell_count(), 0);
  std::vector<CellIndex> path;

  for (int y = 0; y < g.nrows(); ++y) {
    for (int x = 0; x < g.ncols(); ++x) {
      CellIndex start{x, y};
      std::size_t si = g.index(start);
      if (state[si] != 0 || g.is_nodata(start)) continue;

      path.clear();
      CellIndex cur = start;
      std::optional<CycleError> found;
      while (true) {
        std::size_t ci = g.index(cur);
        if (state[ci] == 2) break;
        if (state[ci] == 1) {
          // Closed the loop within the current walk.
          CycleError err;
          err.cycle.assign(path.begin() + path_pos[ci], path.end());
          found = std::move(err);
          break;
        }
        state[ci] = 1;
        path_pos[ci] = path.size();
        path.push_back(cur);
        Downstream d = downstream(g, cur);
        if (d.kind != Downstream::Kind::Cell) break;
        cur = d.cell;
      }
      for (CellIndex c : path) state[g.index(c)] = 2;
      if (found) return found;
    }
  }
  return std::nullopt;
}

}  // namespace watermarch
