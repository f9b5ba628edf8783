#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "watermarch/grid.hpp"
#include "watermarch/mns.hpp"

namespace watermarch {

/// One pour point's instrumentation: how much each delineation route read.
struct BenchmarkRecord {
  int pour_x = 0;
  int pour_y = 0;
  uint64_t area_cells = 0;
  uint64_t boundary_points = 0;
  uint64_t hsm_face_reads = 0;
  uint64_t baseline_cell_reads = 0;
};

/// y = c * x^b fitted on log-log axes.
struct PowerLawFit {
  double c = 0.0;
  double b = 0.0;
  double r2 = 0.0;
  std::size_t n_points = 0;
};

/// Ordinary least squares on (ln x, ln y). Requires at least three pairs,
/// all strictly positive, with non-degenerate ln-x variance.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& pairs);

/// Inverts the fit: the x whose predicted y equals area_cells, i.e. the
/// boundary-march count expected for a watershed that costs area_cells
/// reads to flood-fill.
double predict_marches(const PowerLawFit& fit, double area_cells);

/// Cell-count multiplier when moving from coarse to fine resolution:
/// (coarse/fine)^2. 30 m versus 1 m gives exactly 900.
double resolution_scale_factor(double coarse_cell_m, double fine_cell_m);

/// Number of square cells of side cell_m covering area_m2.
double cells_for_area(double area_m2, double cell_m);

/// Regression coefficients published for a ~36,000 km^2 basin delineated at
/// 30 m resolution (14,718 watersheds). Kept as reference constants; they
/// are data-dependent, not a reproduction target.
inline constexpr double kPublished30mFitC = 0.1967;
inline constexpr double kPublished30mFitB = 1.7986;

/// Runs both delineation routes for `sample` seeded uniform draws over the
/// valid cells (with replacement) and records the counters per draw.
std::vector<BenchmarkRecord> run_benchmark(const D8Grid& g, const MnsGrid& m,
                                           std::size_t sample, uint64_t seed);

/// CSV with header pour_x,pour_y,area_cells,boundary_points,hsm_face_reads,
/// baseline_cell_reads and LF line endings.
void write_benchmark_csv(const std::vector<BenchmarkRecord>& records,
                         std::ostream& out);

/// (boundary_points, baseline_cell_reads) pairs ready for fit_power_law.
std::vector<std::pair<double, double>> benchmark_fit_pairs(
    const std::vector<BenchmarkRecord>& records);

}  // namespace watermarch
