#pragma once

#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "watermarch/grid.hpp"
#include "watermarch/march.hpp"

namespace watermarch {

/// Membership bitmap over a grid plus cardinality.
class CellSet {
public:
  CellSet(int ncols, int nrows)
      : ncols_(ncols), nrows_(nrows),
        bits_(std::size_t(ncols) * std::size_t(nrows), 0) {}

  int ncols() const { return ncols_; }
  int nrows() const { return nrows_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool in_range(CellIndex c) const {
    return c.x >= 0 && c.x < ncols_ && c.y >= 0 && c.y < nrows_;
  }
  bool contains(CellIndex c) const {
    return in_range(c) && bits_[std::size_t(c.y) * ncols_ + c.x] != 0;
  }
  void add(CellIndex c) {
    auto& b = bits_[std::size_t(c.y) * ncols_ + c.x];
    if (!b) {
      b = 1;
      ++count_;
    }
  }

private:
  int ncols_;
  int nrows_;
  std::vector<uint8_t> bits_;
  std::size_t count_ = 0;
};

/// Set of undirected unit lattice edges. Each edge is keyed by its
/// lexicographically smaller endpoint plus an orientation bit.
class EdgeSet {
public:
  /// Inserts the edge from p one unit east (horizontal) or south (vertical).
  /// Returns false when the edge was already present.
  bool insert(LatticePoint p, bool horizontal) {
    return set_.insert(key(p, horizontal)).second;
  }
  bool contains(LatticePoint p, bool horizontal) const {
    return set_.count(key(p, horizontal)) != 0;
  }
  std::size_t size() const { return set_.size(); }
  bool operator==(const EdgeSet& other) const { return set_ == other.set_; }

  /// Decoded edges as (west/north endpoint, horizontal flag), unordered.
  std::vector<std::pair<LatticePoint, bool>> edges() const;

private:
  static uint64_t key(LatticePoint p, bool horizontal) {
    return (uint64_t(uint32_t(p.x)) << 33) | (uint64_t(uint32_t(p.y)) << 1) |
           uint64_t(horizontal);
  }
  std::unordered_set<uint64_t> set_;
};

/// All cells whose downstream chain reaches v_star, found by breadth-first
/// traversal of inflow edges. The read counter charges eight neighbor
/// inspections per dequeued cell, the conventional area-proportional cost.
std::pair<CellSet, ReadCounter> flood_fill_watershed(const D8Grid& g,
                                                     CellIndex v_star);

/// Lattice edges with exactly one adjacent face in s (absent faces count as
/// outside). Throws on an empty set.
EdgeSet cellset_boundary(const CellSet& s);

/// Undirected edge set of the closed walk. Throws Error("non-simple walk")
/// when any undirected edge repeats.
EdgeSet polygon_to_edges(const BoundaryPolygon& p);

/// True when the polygon's edge set equals the cell set's boundary and every
/// interior-left face of the walk lies in s.
bool equivalent(const BoundaryPolygon& p, const CellSet& s);

}  // namespace watermarch
