#include "watermarch/bench.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "watermarch/march.hpp"
#include "watermarch/oracle.hpp"
#include "watermarch/synth.hpp"

namespace watermarch {

PowerLawFit fit_power_law(
    const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3)
    throw Error("power-law fit needs at least three points");

  double sx = 0, sy = 0;
  for (auto [x, y] : pairs) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
      throw Error("power-law fit requires strictly positive finite values");
    sx += std::log(x);
    sy += std::log(y);
  }
  double n = double(pairs.size());
  double mx = sx / n, my = sy / n;

  double sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : pairs) {
    double dx = std::log(x) - mx;
    double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error("power-law fit: degenerate x variance");

  PowerLawFit fit;
  fit.b = sxy / sxx;
  fit.c = std::exp(my - fit.b * mx);
  fit.n_points = pairs.size();
  if (syy == 0.0) {
    fit.r2 = 1.0;
  } else {
    double ss_res = syy - fit.b * sxy;
    fit.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

double predict_marches(const PowerLawFit& fit, double area_cells) {
  if (!(fit.c > 0.0) || fit.b == 0.0) throw Error("invalid power-law fit");
  if (!(area_cells >= 1.0)) throw Error("area must be at least one cell");
  return std::exp((std::log(area_cells) - std::log(fit.c)) / fit.b);
}

double resolution_scale_factor(double coarse_cell_m, double fine_cell_m) {
  if (!(coarse_cell_m > 0.0) || !(fine_cell_m > 0.0))
    throw Error("cell sizes must be positive");
  double r = coarse_cell_m / fine_cell_m;
  return r * r;
}

double cells_for_area(double area_m2, double cell_m) {
  if (!(area_m2 > 0.0) || !(cell_m > 0.0))
    throw Error("area and cell size must be positive");
  return area_m2 / (cell_m * cell_m);
}

std::vector<BenchmarkRecord> run_benchmark(const D8Grid& g, const MnsGrid& m,
                                           std::size_t sample, uint64_t seed) {
  if (sample < 1) throw Error("benchmark sample count must be at least 1");

  std::vector<CellIndex> valid;
  valid.reserve(g.valid_count());
  for (int y = 0; y < g.nrows(); ++y)
    for (int x = 0; x < g.ncols(); ++x)
      if (!g.is_nodata({x, y})) valid.push_back({x, y});
  if (valid.empty()) throw Error("benchmark grid has no valid cells");

  SplitMix64 rng(seed);
  std::vector<BenchmarkRecord> records;
  records.reserve(sample);
  for (std::size_t i = 0; i < sample; ++i) {
    CellIndex v = valid[rng.below(valid.size())];
    auto [poly, hsm_rc] = delineate(g, m, v);
    auto [set, base_rc] = flood_fill_watershed(g, v);
    BenchmarkRecord rec;
    rec.pour_x = v.x;
    rec.pour_y = v.y;
    rec.area_cells = set.size();
    rec.boundary_points = poly.size();
    rec.hsm_face_reads = hsm_rc.face_reads;
    rec.baseline_cell_reads = base_rc.face_reads;
    records.push_back(rec);
  }
  return records;
}

void write_benchmark_csv(const std::vector<BenchmarkRecord>& records,
                         std::ostream& out) {
  out << "pour_x,pour_y,area_cells,boundary_points,hsm_face_reads,"
         "baseline_cell_reads\n";
  for (const BenchmarkRecord& r : records) {
    out << r.pour_x << ',' << r.pour_y << ',' << r.area_cells << ','
        << r.boundary_points << ',' << r.hsm_face_reads << ','
        << r.baseline_cell_reads << '\n';
  }
}

std::vector<std::pair<double, double>> benchmark_fit_pairs(
    const std::vector<BenchmarkRecord>& records) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(records.size());
  for (const BenchmarkRecord& r : records)
    pairs.push_back({double(r.boundary_points), double(r.baseline_cell_reads)});
  return pairs;
}

}  // namespace watermarch
