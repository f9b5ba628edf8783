#include "watermarch/oracle.hpp"

#include <deque>
#include <stdexcept>

namespace watermarch {

std::vector<std::pair<LatticePoint, bool>> EdgeSet::edges() const {
  std::vector<std::pair<LatticePoint, bool>> out;
  out.reserve(set_.size());
  for (uint64_t k : set_) {
    LatticePoint p{int(uint32_t(k >> 33)), int(uint32_t((k >> 1) & 0xffffffffu))};
    out.push_back({p, (k & 1) != 0});
  }
  return out;
}

std::pair<CellSet, ReadCounter> flood_fill_watershed(const D8Grid& g,
                                                     CellIndex v_star) {
  if (!g.in_range(v_star) || g.is_nodata(v_star))
    throw std::invalid_argument("pour point is nodata or out of range");

  CellSet set(g.ncols(), g.nrows());
  ReadCounter rc;
  std::deque<CellIndex> queue;
  set.add(v_star);
  queue.push_back(v_star);
  while (!queue.empty()) {
    CellIndex c = queue.front();
    queue.pop_front();
    rc.face_reads += 8;
    for (CellIndex u : inflow_neighbors(g, c)) {
      if (!set.contains(u)) {
        set.add(u);
        queue.push_back(u);
      }
    }
  }
  return {std::move(set), rc};
}

EdgeSet cellset_boundary(const CellSet& s) {
  if (s.empty()) throw Error("cellset_boundary: empty cell set");
  EdgeSet edges;
  for (int y = 0; y < s.nrows(); ++y) {
    for (int x = 0; x < s.ncols(); ++x) {
      CellIndex c{x, y};
      if (!s.contains(c)) continue;
      // North, south, west, east unit edges of this cell.
      if (!s.contains({x, y - 1})) edges.insert({x, y}, true);
      if (!s.contains({x, y + 1})) edges.insert({x, y + 1}, true);
      if (!s.contains({x - 1, y})) edges.insert({x, y}, false);
      if (!s.contains({x + 1, y})) edges.insert({x + 1, y}, false);
    }
  }
  return edges;
}

EdgeSet polygon_to_edges(const BoundaryPolygon& p) {
  EdgeSet edges;
  std::size_t n = p.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    LatticePoint a = p.points[i];
    LatticePoint b = p.points[(i + 1) % n];
    int dx = b.x - a.x;
    int dy = b.y - a.y;
    if (dx * dx + dy * dy != 1)
      throw Error("non-unit step in boundary polygon");
    bool horizontal = dy == 0;
    LatticePoint lo = (dx > 0 || dy > 0) ? a : b;
    if (!edges.insert(lo, horizontal)) throw Error("non-simple walk");
  }
  return edges;
}

bool equivalent(const BoundaryPolygon& p, const CellSet& s) {
  if (p.points.empty() || s.empty()) return false;
  if (polygon_to_edges(p) != cellset_boundary(s)) return false;
  // Interior must sit on the left of every directed step.
  std::size_t n = p.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    LatticePoint a = p.points[i];
    LatticePoint b = p.points[(i + 1) % n];
    int mu;
    if (b.y == a.y - 1) mu = 0;
    else if (b.x == a.x + 1) mu = 1;
    else if (b.y == a.y + 1) mu = 2;
    else mu = 3;
    if (!s.contains(face_cell(a, mu))) return false;
  }
  return true;
}

}  // namespace watermarch
