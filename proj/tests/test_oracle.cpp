#include <doctest.h>

#include <map>

#include "test_util.hpp"
#include "watermarch/mns.hpp"
#include "watermarch/oracle.hpp"
#include "watermarch/synth.hpp"

using namespace watermarch;
using wmtest::chain3;
using wmtest::make_grid;

namespace {

CellSet set_of(int ncols, int nrows, std::initializer_list<CellIndex> cells) {
  CellSet s(ncols, nrows);
  for (CellIndex c : cells) s.add(c);
  return s;
}

void check_even_degrees(const EdgeSet& edges) {
  std::map<std::pair<int, int>, int> degree;
  for (auto [p, horizontal] : edges.edges()) {
    LatticePoint q =
        horizontal ? LatticePoint{p.x + 1, p.y} : LatticePoint{p.x, p.y + 1};
    ++degree[{p.x, p.y}];
    ++degree[{q.x, q.y}];
  }
  for (auto& [pt, d] : degree) CHECK(d % 2 == 0);
}

}  // namespace

TEST_CASE("flood fill finds the chain watersheds and counts 8 reads a cell") {
  D8Grid one = make_grid(1, 1, {64});
  auto [s1, rc1] = flood_fill_watershed(one, {0, 0});
  CHECK(s1.size() == 1);
  CHECK(rc1.face_reads == 8);

  D8Grid g = chain3();
  auto [s3, rc3] = flood_fill_watershed(g, {2, 0});
  CHECK(s3.size() == 3);
  CHECK(rc3.face_reads == 24);
  CHECK(s3.contains({0, 0}));
  CHECK(s3.contains({1, 0}));
  CHECK(s3.contains({2, 0}));
}

TEST_CASE("flood fill cardinality equals the MNS interval width") {
  D8Grid g = gen_random_forest(32, 32, 17, 0.02);
  auto [m, stats] = compute_mns(g);
  for (int y = 0; y < g.nrows(); ++y) {
    for (int x = 0; x < g.ncols(); ++x) {
      CellIndex v{x, y};
      auto [set, rc] = flood_fill_watershed(g, v);
      CHECK(set.size() == m.area_cells(v));
      CHECK(rc.face_reads == 8 * set.size());
    }
  }
}

TEST_CASE("cellset_boundary of simple shapes") {
  CHECK(cellset_boundary(set_of(3, 3, {{1, 1}})).size() == 4);
  CHECK(cellset_boundary(set_of(3, 3, {{0, 0}, {1, 0}})).size() == 6);
  // L-shaped tromino: 8-edge staircase perimeter.
  CHECK(cellset_boundary(set_of(3, 3, {{0, 0}, {0, 1}, {1, 1}})).size() == 8);
  CHECK_THROWS_AS(cellset_boundary(CellSet(3, 3)), Error);
}

TEST_CASE("cellset_boundary always has even vertex degree") {
  D8Grid g = gen_random_forest(24, 24, 8, 0.03);
  SplitMix64 rng(123);
  for (int trial = 0; trial < 32; ++trial) {
    CellIndex v{int(rng.below(24)), int(rng.below(24))};
    auto [set, rc] = flood_fill_watershed(g, v);
    check_even_degrees(cellset_boundary(set));
  }
}

TEST_CASE("polygon_to_edges counts walk edges and rejects repeats") {
  BoundaryPolygon square;
  square.points = {{1, 0}, {0, 0}, {0, 1}, {1, 1}};
  CHECK(polygon_to_edges(square).size() == 4);

  BoundaryPolygon rect;
  rect.points = {{3, 0}, {2, 0}, {1, 0}, {0, 0},
                 {0, 1}, {1, 1}, {2, 1}, {3, 1}};
  CHECK(polygon_to_edges(rect).size() == 8);

  // Two unit squares joined at (1,1); the shared point has degree 4.
  BoundaryPolygon pinch;
  pinch.points = {{1, 0}, {0, 0}, {0, 1}, {1, 1},
                  {1, 2}, {2, 2}, {2, 1}, {1, 1}};
  EdgeSet pe = polygon_to_edges(pinch);
  CHECK(pe.size() == 8);
  check_even_degrees(pe);

  BoundaryPolygon folded;
  folded.points = {{0, 0}, {1, 0}, {0, 0}, {0, 1}};
  CHECK_THROWS_WITH_AS(polygon_to_edges(folded),
                       doctest::Contains("non-simple"), Error);
}

TEST_CASE("equivalent accepts the matching watershed and rejects others") {
  D8Grid g = chain3();
  auto [m, stats] = compute_mns(g);

  auto [poly_root, rc1] = delineate(g, m, {2, 0});
  auto [set_root, rc2] = flood_fill_watershed(g, {2, 0});
  auto [set_mid, rc3] = flood_fill_watershed(g, {1, 0});
  CHECK(equivalent(poly_root, set_root));
  CHECK(!equivalent(poly_root, set_mid));

  // Right edges, wrong orientation: interior must be on the left.
  BoundaryPolygon reversed = poly_root;
  std::reverse(reversed.points.begin(), reversed.points.end());
  CHECK(!equivalent(reversed, set_root));
}
