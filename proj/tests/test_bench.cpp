#include <doctest.h>

#include <cmath>
#include <sstream>

#include "test_util.hpp"
#include "watermarch/bench.hpp"
#include "watermarch/march.hpp"
#include "watermarch/mns.hpp"
#include "watermarch/oracle.hpp"
#include "watermarch/synth.hpp"

using namespace watermarch;
using wmtest::make_grid;

TEST_CASE("fit_power_law recovers a noiseless law") {
  std::vector<std::pair<double, double>> pairs;
  for (double x : {1.0, 2.0, 4.0, 8.0})
    pairs.push_back({x, 2.0 * std::pow(x, 1.5)});
  PowerLawFit fit = fit_power_law(pairs);
  CHECK(std::abs(fit.c - 2.0) <= 2e-9);
  CHECK(std::abs(fit.b - 1.5) <= 1e-9);
  CHECK(std::abs(fit.r2 - 1.0) <= 1e-9);
  CHECK(fit.n_points == 4);
}

TEST_CASE("fit_power_law rejects bad inputs") {
  CHECK_THROWS_AS(fit_power_law({{1, 1}, {2, 2}}), Error);
  CHECK_THROWS_AS(fit_power_law({{1, 1}, {2, 2}, {-1, 3}}), Error);
  CHECK_THROWS_AS(fit_power_law({{1, 1}, {2, 2}, {0, 3}}), Error);
  CHECK_THROWS_WITH_AS(fit_power_law({{2, 1}, {2, 2}, {2, 3}}),
                       doctest::Contains("degenerate"), Error);
}

TEST_CASE("predict_marches inverts the fit") {
  PowerLawFit identity{1.0, 1.0, 1.0, 3};
  CHECK(predict_marches(identity, 1000.0) == doctest::Approx(1000.0));

  PowerLawFit published{kPublished30mFitC, kPublished30mFitB, 0.98, 14718};
  double amazon = predict_marches(published, 6.78e9);
  CHECK(amazon > 5e5);
  CHECK(amazon < 1.5e6);

  // Monotone in area for positive exponents.
  CHECK(predict_marches(published, 1e6) < predict_marches(published, 1e7));
}

TEST_CASE("resolution scaling and area conversion") {
  CHECK(resolution_scale_factor(30.0, 1.0) == 900.0);
  CHECK(cells_for_area(8100.0, 30.0) == doctest::Approx(9.0));
  // ~6.1 million km^2 at 30 m resolution is ~6.8e9 cells.
  double cells = cells_for_area(6.1e12, 30.0);
  CHECK(cells == doctest::Approx(6.777e9).epsilon(1e-3));
  CHECK(cells_for_area(6.1e12, 1.0) / cells == doctest::Approx(900.0));
}

TEST_CASE("benchmark on a 1x1 grid emits one sane record") {
  D8Grid g = make_grid(1, 1, {64});
  auto [m, stats] = compute_mns(g);
  auto records = run_benchmark(g, m, 1, 1);
  REQUIRE(records.size() == 1);
  CHECK(records[0].area_cells == 1);
  CHECK(records[0].boundary_points == 4);
  CHECK(records[0].baseline_cell_reads == 8);
}

TEST_CASE("benchmark CSV bytes are deterministic per seed") {
  D8Grid g = gen_random_forest(32, 32, 4, 0.02);
  auto [m, stats] = compute_mns(g);
  std::ostringstream a, b;
  write_benchmark_csv(run_benchmark(g, m, 50, 9), a);
  write_benchmark_csv(run_benchmark(g, m, 50, 9), b);
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, 7) == "pour_x,");

  std::ostringstream c;
  write_benchmark_csv(run_benchmark(g, m, 50, 10), c);
  CHECK(a.str() != c.str());
}

TEST_CASE("records respect the read-bound invariants") {
  D8Grid g = gen_cone(128, 128, {64, 0});
  auto [m, stats] = compute_mns(g);
  auto records = run_benchmark(g, m, 40, 2);
  for (const BenchmarkRecord& r : records) {
    CHECK(r.area_cells >= 1);
    CHECK(r.boundary_points >= 4);
    CHECK(r.hsm_face_reads <= 12 * r.boundary_points + 12);
    CHECK(r.baseline_cell_reads >= 8 * r.area_cells);
  }
}

TEST_CASE("the outlet watershed of a large cone shows the read reduction") {
  D8Grid g = gen_cone(128, 128, {64, 0});
  auto [m, stats] = compute_mns(g);
  auto [poly, hsm_rc] = delineate(g, m, {64, 0});
  auto [set, base_rc] = flood_fill_watershed(g, {64, 0});
  CHECK(set.size() == 128 * 128);
  CHECK(base_rc.face_reads / hsm_rc.face_reads >= 20);
  double reduction =
      1.0 - double(hsm_rc.face_reads) / double(base_rc.face_reads);
  CHECK(reduction >= 0.95);
}

TEST_CASE("every cone watershed of 10k+ cells reads at least 95% less") {
  D8Grid g = gen_cone(128, 128, {64, 0});
  auto [m, stats] = compute_mns(g);
  int found = 0;
  for (int y = 0; y < g.nrows(); ++y) {
    for (int x = 0; x < g.ncols(); ++x) {
      CellIndex v{x, y};
      if (m.area_cells(v) < 10000) continue;
      ++found;
      auto [poly, hsm_rc] = delineate(g, m, v);
      double baseline = 8.0 * double(m.area_cells(v));
      CHECK(1.0 - double(hsm_rc.face_reads) / baseline >= 0.95);
    }
  }
  CHECK(found >= 1);
}
