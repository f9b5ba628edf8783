#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "watermarch/ascii_grid.hpp"
#include "watermarch/bench.hpp"
#include "watermarch/grid.hpp"
#include "watermarch/march.hpp"
#include "watermarch/mns.hpp"
#include "watermarch/oracle.hpp"
#include "watermarch/synth.hpp"
#include "watermarch/vector_io.hpp"

namespace wm = watermarch;

namespace {

// Exit-code contract: 0 ok, 1 verification failure, 2 bad input, 3 I/O.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIo = 3;

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<long long, long long> parse_pair(const std::string& s,
                                           const char* what) {
  std::size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw BadInput(std::string(what) + " must be 'X,Y', got '" + s + "'");
  try {
    std::size_t used1 = 0, used2 = 0;
    long long x = std::stoll(s.substr(0, comma), &used1);
    long long y = std::stoll(s.substr(comma + 1), &used2);
    if (used1 != comma || used2 != s.size() - comma - 1)
      throw BadInput(std::string(what) + " must be 'X,Y', got '" + s + "'");
    return {x, y};
  } catch (const BadInput&) {
    throw;
  } catch (const std::exception&) {
    throw BadInput(std::string(what) + " must be 'X,Y', got '" + s + "'");
  }
}

std::pair<double, double> parse_world_pair(const std::string& s,
                                           const char* what) {
  std::size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw BadInput(std::string(what) + " must be 'X,Y', got '" + s + "'");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw BadInput(std::string(what) + " must be 'X,Y', got '" + s + "'");
  }
}

std::pair<int, int> parse_dims(const std::string& s) {
  std::size_t x = s.find('x');
  if (x == std::string::npos)
    throw BadInput("--dims must be WxH, got '" + s + "'");
  try {
    int w = std::stoi(s.substr(0, x));
    int h = std::stoi(s.substr(x + 1));
    if (w < 1 || h < 1) throw BadInput("--dims must be positive");
    return {w, h};
  } catch (const BadInput&) {
    throw;
  } catch (const std::exception&) {
    throw BadInput("--dims must be WxH, got '" + s + "'");
  }
}

// Converts a world coordinate to the containing cell.
wm::CellIndex world_to_cell(const wm::Georef& r, double wx, double wy) {
  int x = int(std::floor((wx - r.xllcorner) / r.cellsize));
  int y = int(std::floor((r.yllcorner + r.nrows * r.cellsize - wy) /
                         r.cellsize));
  return {x, y};
}

int cmd_preprocess(const std::string& fdg_path, const std::string& out_path) {
  wm::D8Grid g = wm::load_ascii_grid(fdg_path);
  if (auto cyc = wm::validate_acyclic(g)) {
    std::ostringstream msg;
    msg << "flow grid contains a cycle:";
    for (wm::CellIndex c : cyc->cycle) msg << " (" << c.x << "," << c.y << ")";
    throw BadInput(msg.str());
  }
  auto [mns, stats] = wm::compute_mns(g);
  wm::save_mns(mns, out_path);
  std::cout << "n_valid=" << mns.valid_count() << "\n"
            << "pushes=" << stats.pushes << "\n"
            << "pops=" << stats.pops << "\n"
            << "cells_labeled=" << stats.cells_labeled << "\n";
  return kExitOk;
}

int cmd_delineate(const std::string& mns_path, const std::string& pour,
                  const std::string& format, bool count_reads, bool world) {
  wm::MnsGrid m = wm::load_mns(mns_path);
  wm::CellIndex v;
  if (world) {
    auto [wx, wy] = parse_world_pair(pour, "--pour");
    v = world_to_cell(wm::georef(m), wx, wy);
  } else {
    auto [x, y] = parse_pair(pour, "--pour");
    v = {int(x), int(y)};
  }
  if (!m.in_range(v))
    throw BadInput("pour point (" + std::to_string(v.x) + "," +
                   std::to_string(v.y) + ") is outside the grid");
  if (m.is_nodata(v))
    throw BadInput("pour point (" + std::to_string(v.x) + "," +
                   std::to_string(v.y) + ") is nodata");

  auto [poly, rc] = wm::delineate(m, v);
  if (format == "wkt") {
    wm::write_wkt(poly, wm::georef(m), std::cout);
  } else {
    wm::write_geojson(poly, wm::georef(m), v, m.area_cells(v), std::cout);
  }
  if (count_reads) {
    std::cerr << "face_reads=" << rc.face_reads << "\n"
              << "boundary_tests=" << rc.boundary_tests << "\n"
              << "accepted_moves=" << rc.accepted_moves << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& fdg_path, const std::string& mns_path,
               std::optional<uint64_t> sample, uint64_t seed) {
  if (sample && *sample == 0) throw BadInput("--sample must be at least 1");
  wm::D8Grid g = wm::load_ascii_grid(fdg_path);
  if (auto cyc = wm::validate_acyclic(g))
    throw BadInput("flow grid contains a cycle of length " +
                   std::to_string(cyc->cycle.size()));
  std::optional<wm::MnsGrid> loaded;
  if (!mns_path.empty()) {
    loaded = wm::load_mns(mns_path);
    if (loaded->ncols() != g.ncols() || loaded->nrows() != g.nrows())
      throw BadInput("MNS and flow grids have different dimensions");
  }
  const wm::MnsGrid m =
      loaded ? std::move(*loaded) : wm::compute_mns(g).first;

  std::vector<wm::CellIndex> pours;
  if (sample) {
    std::vector<wm::CellIndex> valid;
    for (int y = 0; y < g.nrows(); ++y)
      for (int x = 0; x < g.ncols(); ++x)
        if (!g.is_nodata({x, y})) valid.push_back({x, y});
    wm::SplitMix64 rng(seed);
    for (uint64_t i = 0; i < *sample; ++i)
      pours.push_back(valid[rng.below(valid.size())]);
  } else {
    for (int y = 0; y < g.nrows(); ++y)
      for (int x = 0; x < g.ncols(); ++x)
        if (!g.is_nodata({x, y})) pours.push_back({x, y});
  }

  uint64_t passed = 0, failed = 0;
  std::optional<wm::CellIndex> first_bad;
  for (wm::CellIndex v : pours) {
    bool ok = false;
    try {
      auto [poly, rc] = wm::delineate(g, m, v);
      auto [set, base_rc] = wm::flood_fill_watershed(g, v);
      ok = wm::equivalent(poly, set) &&
           uint64_t(poly.signed_area_cells()) == m.area_cells(v) &&
           set.size() == m.area_cells(v);
    } catch (const std::exception&) {
      ok = false;
    }
    if (ok) {
      ++passed;
    } else {
      ++failed;
      if (!first_bad) first_bad = v;
    }
  }

  std::cout << "checked=" << pours.size() << "\n"
            << "passed=" << passed << "\n"
            << "failed=" << failed << "\n";
  if (failed) {
    std::cerr << "first failing pour point: (" << first_bad->x << ","
              << first_bad->y << ")\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_benchmark(const std::string& mns_path, const std::string& fdg_path,
                  uint64_t sample, uint64_t seed, const std::string& out_csv) {
  if (sample == 0) throw BadInput("--sample must be at least 1");
  wm::MnsGrid m = wm::load_mns(mns_path);
  wm::D8Grid g = wm::load_ascii_grid(fdg_path);
  if (g.ncols() != m.ncols() || g.nrows() != m.nrows())
    throw BadInput("MNS and flow grids have different dimensions");

  auto records = wm::run_benchmark(g, m, sample, seed);
  std::ofstream out(out_csv, std::ios::binary);
  if (!out) throw wm::IoError("cannot open '" + out_csv + "' for writing");
  wm::write_benchmark_csv(records, out);
  out.flush();
  if (!out) throw wm::IoError("failed writing '" + out_csv + "'");

  if (records.size() >= 3) {
    try {
      wm::PowerLawFit fit = wm::fit_power_law(wm::benchmark_fit_pairs(records));
      char buf[160];
      std::snprintf(buf, sizeof buf, "c=%.10g\nb=%.10g\nr2=%.10g\nn_points=%zu\n",
                    fit.c, fit.b, fit.r2, fit.n_points);
      std::cout << buf;
    } catch (const wm::Error& e) {
      std::cerr << "fit skipped: " << e.what() << "\n";
    }
  } else {
    std::cerr << "fit skipped: need at least 3 samples\n";
  }
  return kExitOk;
}

int cmd_generate(const std::string& kind, const std::string& dims,
                 uint64_t seed, double root_fraction,
                 const std::string& outlet_arg,
                 const std::string& pit_arg, const std::string& out_path) {
  auto [w, h] = parse_dims(dims);
  std::optional<wm::D8Grid> g;
  if (kind == "cone") {
    wm::CellIndex outlet{w / 2, 0};
    if (!outlet_arg.empty()) {
      auto [x, y] = parse_pair(outlet_arg, "--outlet");
      outlet = {int(x), int(y)};
    }
    g = wm::gen_cone(w, h, outlet);
  } else if (kind == "forest") {
    g = wm::gen_random_forest(w, h, seed, root_fraction);
  } else if (kind == "dem-slope") {
    std::vector<double> heights = wm::make_east_slope_dem(w, h);
    if (!pit_arg.empty()) {
      auto [px, py] = parse_pair(pit_arg, "--pit");
      if (px < 0 || px >= w || py < 0 || py >= h)
        throw BadInput("--pit cell out of range");
      heights[std::size_t(py) * w + px] = -1.0;
    }
    g = wm::gen_from_dem(w, h, heights);
  } else {
    throw BadInput("unknown generator kind '" + kind + "'");
  }
  wm::save_ascii_grid(*g, out_path);
  std::cerr << "wrote " << w << "x" << h << " " << kind << " grid to "
            << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "watermarch: watershed boundary extraction from D8 flow-direction "
      "grids via interval labels and boundary marching"};
  app.require_subcommand(1);

  // preprocess
  std::string pre_fdg, pre_out;
  CLI::App* pre = app.add_subcommand(
      "preprocess", "Label a flow grid and write the binary index");
  pre->add_option("fdg", pre_fdg, "input ESRI ASCII D8 grid")->required();
  pre->add_option("out", pre_out, "output MNS file")->required();

  // delineate
  std::string del_mns, del_pour, del_format = "geojson";
  bool del_count = false, del_world = false;
  CLI::App* del = app.add_subcommand(
      "delineate", "Extract one watershed polygon from an MNS file");
  del->add_option("mns", del_mns, "input MNS file")->required();
  del->add_option("--pour", del_pour, "pour point as X,Y grid indices")
      ->required();
  del->add_option("--format", del_format, "geojson or wkt")
      ->check(CLI::IsMember({"geojson", "wkt"}));
  del->add_flag("--count-reads", del_count,
                "print read counters on standard error");
  del->add_flag("--world", del_world,
                "interpret --pour as world coordinates");

  // verify
  std::string ver_fdg, ver_mns;
  std::optional<uint64_t> ver_sample;
  uint64_t ver_seed = 1;
  CLI::App* ver = app.add_subcommand(
      "verify", "Check marched polygons against flood-fill ground truth");
  ver->add_option("fdg", ver_fdg, "input ESRI ASCII D8 grid")->required();
  ver->add_option("--mns", ver_mns,
                  "verify against this MNS file instead of relabeling");
  ver->add_option("--sample", ver_sample,
                  "check this many seeded pour points instead of all");
  ver->add_option("--seed", ver_seed, "sampling seed (unsigned 64-bit)");

  // benchmark
  std::string ben_mns, ben_fdg, ben_csv;
  uint64_t ben_sample = 100, ben_seed = 1;
  CLI::App* ben = app.add_subcommand(
      "benchmark", "Compare marching reads against flood-fill reads");
  ben->add_option("mns", ben_mns, "input MNS file")->required();
  ben->add_option("fdg", ben_fdg, "input ESRI ASCII D8 grid")->required();
  ben->add_option("--sample", ben_sample, "number of pour points to sample");
  ben->add_option("--seed", ben_seed, "sampling seed (unsigned 64-bit)");
  ben->add_option("--out", ben_csv, "output CSV path")->required();

  // generate
  std::string gen_kind, gen_dims, gen_outlet, gen_pit, gen_out;
  uint64_t gen_seed = 1;
  double gen_rf = 0.02;
  CLI::App* gen =
      app.add_subcommand("generate", "Write a synthetic D8 grid");
  gen->add_option("kind", gen_kind, "cone, forest, or dem-slope")
      ->required()
      ->check(CLI::IsMember({"cone", "forest", "dem-slope"}));
  gen->add_option("--dims", gen_dims, "grid size as WxH")->required();
  gen->add_option("--seed", gen_seed, "generator seed (unsigned 64-bit)");
  gen->add_option("--root-fraction", gen_rf,
                  "fraction of cells made roots (forest)");
  gen->add_option("--outlet", gen_outlet, "cone outlet as X,Y (border cell)");
  gen->add_option("--pit", gen_pit,
                  "carve an unfilled pit at X,Y (dem-slope)");
  gen->add_option("--out", gen_out, "output ESRI ASCII path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (pre->parsed()) return cmd_preprocess(pre_fdg, pre_out);
    if (del->parsed())
      return cmd_delineate(del_mns, del_pour, del_format, del_count,
                           del_world);
    if (ver->parsed())
      return cmd_verify(ver_fdg, ver_mns, ver_sample, ver_seed);
    if (ben->parsed())
      return cmd_benchmark(ben_mns, ben_fdg, ben_sample, ben_seed, ben_csv);
    if (gen->parsed())
      return cmd_generate(gen_kind, gen_dims, gen_seed, gen_rf, gen_outlet,
                          gen_pit, gen_out);
  } catch (const wm::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const wm::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const wm::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const wm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
