#include <doctest.h>

#include <cstdio>
#include <sstream>
#include <vector>

#include "test_util.hpp"
#include "watermarch/mns.hpp"
#include "watermarch/oracle.hpp"
#include "watermarch/synth.hpp"

using namespace watermarch;
using wmtest::chain3;
using wmtest::make_grid;

TEST_CASE("single root cell gets d=1, f=1") {
  auto [m, stats] = compute_mns(make_grid(1, 1, {64}));
  CHECK(m.discovery({0, 0}) == 1);
  CHECK(m.finish({0, 0}) == 1);
  CHECK(stats.pushes == 1);
  CHECK(stats.pops == 1);
  CHECK(stats.cells_labeled == 1);
}

TEST_CASE("west-to-east chain labels root first, shares the finish") {
  auto [m, stats] = compute_mns(chain3());
  CHECK(m.discovery({2, 0}) == 1);  // root
  CHECK(m.discovery({1, 0}) == 2);
  CHECK(m.discovery({0, 0}) == 3);
  CHECK(m.finish({0, 0}) == 3);
  CHECK(m.finish({1, 0}) == 3);
  CHECK(m.finish({2, 0}) == 3);
  CHECK(stats.cells_labeled == 3);
}

TEST_CASE("subtree_contains is an interval test with absent/nodata outside") {
  auto [m, stats] = compute_mns(chain3());
  CellIndex mid{1, 0};
  CHECK(subtree_contains(m, mid, mid));
  CHECK(subtree_contains(m, mid, CellIndex{0, 0}));
  CHECK(!subtree_contains(m, mid, CellIndex{2, 0}));
  CHECK(!subtree_contains(m, mid, std::nullopt));
  CHECK(!subtree_contains(m, mid, CellIndex{5, 5}));
}

TEST_CASE("errors on empty and cyclic grids") {
  CHECK_THROWS_WITH_AS(compute_mns(make_grid(1, 1, {-9999})),
                       doctest::Contains("empty"), Error);
  CHECK_THROWS_WITH_AS(compute_mns(make_grid(2, 1, {1, 16})),
                       doctest::Contains("cycle"), Error);
}

TEST_CASE("intervals match flood-fill watersheds on a random grid") {
  D8Grid g = gen_random_forest(32, 32, 7, 0.02);
  auto [m, stats] = compute_mns(g);
  for (int y = 0; y < g.nrows(); ++y) {
    for (int x = 0; x < g.ncols(); ++x) {
      CellIndex v{x, y};
      auto [set, rc] = flood_fill_watershed(g, v);
      CHECK(m.area_cells(v) == set.size());
      // The interval members are exactly the flood-fill members.
      uint64_t max_d = 0;
      for (int yy = 0; yy < g.nrows(); ++yy) {
        for (int xx = 0; xx < g.ncols(); ++xx) {
          CellIndex u{xx, yy};
          CHECK(subtree_contains(m, v, u) == set.contains(u));
          if (set.contains(u)) max_d = std::max(max_d, m.discovery(u));
        }
      }
      CHECK(m.finish(v) == max_d);
    }
  }
}

TEST_CASE("discovery labels are a bijection and intervals are laminar") {
  D8Grid g = gen_random_forest(24, 24, 3, 0.02);
  auto [m, stats] = compute_mns(g);
  uint64_t n = m.valid_count();
  CHECK(stats.pushes == n);
  CHECK(stats.pops == n);

  std::vector<uint8_t> seen(n + 1, 0);
  std::vector<std::pair<uint64_t, uint64_t>> intervals;
  for (int y = 0; y < g.nrows(); ++y) {
    for (int x = 0; x < g.ncols(); ++x) {
      uint64_t d = m.discovery({x, y});
      REQUIRE(d >= 1);
      REQUIRE(d <= n);
      CHECK(!seen[d]);
      seen[d] = 1;
      intervals.push_back({d, m.finish({x, y})});
    }
  }
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    for (std::size_t j = i + 1; j < intervals.size(); ++j) {
      auto [a1, b1] = intervals[i];
      auto [a2, b2] = intervals[j];
      bool disjoint = b1 < a2 || b2 < a1;
      bool nested = (a1 <= a2 && b2 <= b1) || (a2 <= a1 && b1 <= b2);
      CHECK((disjoint || nested));
    }
  }
}

TEST_CASE("labeling is deterministic") {
  D8Grid g = gen_random_forest(16, 16, 5, 0.05);
  auto [m1, s1] = compute_mns(g);
  auto [m2, s2] = compute_mns(g);
  CHECK(m1 == m2);
}

TEST_CASE("binary round trip is lossless and size is linear") {
  auto [m, stats] = compute_mns(chain3());
  std::ostringstream out(std::ios::binary);
  write_mns(m, out);
  std::string bytes = out.str();
  CHECK(bytes.size() == 36 + 16 * m.cell_count());

  std::istringstream in(bytes, std::ios::binary);
  MnsGrid back = read_mns(in);
  CHECK(back == m);

  // Writing the reread grid reproduces the bytes.
  std::ostringstream out2(std::ios::binary);
  write_mns(back, out2);
  CHECK(out2.str() == bytes);
}

TEST_CASE("random 128x128 grid round trips every label") {
  D8Grid g = gen_random_forest(128, 128, 42, 0.02);
  auto [m, stats] = compute_mns(g);
  std::ostringstream out(std::ios::binary);
  write_mns(m, out);
  std::istringstream in(out.str(), std::ios::binary);
  CHECK(read_mns(in) == m);
}

TEST_CASE("a 256x256 cone survives the file round trip") {
  D8Grid g = gen_cone(256, 256, {128, 0});
  auto [m, stats] = compute_mns(g);
  const std::string path = "tmp_cone256.mns";
  save_mns(m, path);
  MnsGrid back = load_mns(path);
  CHECK(back == m);
  std::remove(path.c_str());
}

TEST_CASE("read_mns rejects bad magic, truncation, and bad labels") {
  auto [m, stats] = compute_mns(chain3());
  std::ostringstream out(std::ios::binary);
  write_mns(m, out);
  std::string bytes = out.str();

  std::string bad_magic = bytes;
  bad_magic[3] = 'X';
  std::istringstream in1(bad_magic, std::ios::binary);
  CHECK_THROWS_WITH_AS(read_mns(in1), doctest::Contains("magic"), FormatError);

  std::istringstream in2(bytes.substr(0, bytes.size() - 5), std::ios::binary);
  CHECK_THROWS_WITH_AS(read_mns(in2), doctest::Contains("truncated"),
                       FormatError);

  // Overwrite the first record's d with a label beyond n_valid.
  std::string bad_label = bytes;
  bad_label[36] = 9;
  std::istringstream in3(bad_label, std::ios::binary);
  CHECK_THROWS_AS(read_mns(in3), FormatError);

  std::string trailing = bytes + "!";
  std::istringstream in4(trailing, std::ios::binary);
  CHECK_THROWS_WITH_AS(read_mns(in4), doctest::Contains("trailing"),
                       FormatError);
}
