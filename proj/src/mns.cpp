#include "watermarch/mns.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace watermarch {

MnsGrid::MnsGrid(int ncols, int nrows, double xllcorner, double yllcorner,
                 double cellsize, std::vector<uint64_t> d,
                 std::vector<uint64_t> f)
    : ncols_(ncols), nrows_(nrows), xllcorner_(xllcorner),
      yllcorner_(yllcorner), cellsize_(cellsize), d_(std::move(d)),
      f_(std::move(f)) {
  if (ncols_ < 1 || nrows_ < 1) throw Error("MNS dimensions must be positive");
  std::size_t n = std::size_t(ncols_) * std::size_t(nrows_);
  if (d_.size() != n || f_.size() != n)
    throw Error("MNS label tables do not match grid size");
  for (uint64_t v : d_)
    if (v != 0) ++valid_count_;
}

std::pair<MnsGrid, TraversalStats> compute_mns(const D8Grid& g) {
  if (g.valid_count() == 0) throw Error("empty flow grid");

  std::size_t n = g.cell_count();
  std::vector<uint64_t> d(n, 0), f(n, 0);
  TraversalStats stats;
  uint64_t counter = 0;

  // Resumable DFS frame: the cell plus the next neighbor slot to scan.
  struct Frame {
    CellIndex cell;
    int next_slot;
  };
  std::vector<Frame> stack;

  auto push = [&](CellIndex c) {
    d[g.index(c)] = ++counter;
    stack.push_back({c, 0});
    ++stats.pushes;
    ++stats.cells_labeled;
  };

  for (int y = 0; y < g.nrows(); ++y) {
    for (int x = 0; x < g.ncols(); ++x) {
      CellIndex root{x, y};
      if (g.is_nodata(root) || classify_cell(g, root) != CellClass::Root)
        continue;
      push(root);
      while (!stack.empty()) {
        Frame& top = stack.back();
        bool descended = false;
        while (top.next_slot < 8) {
          int slot = top.next_slot++;
          CellIndex nb{top.cell.x + kNeighborDx[slot],
                       top.cell.y + kNeighborDy[slot]};
          if (!g.in_range(nb) || g.is_nodata(nb)) continue;
          int back = (slot + 4) & 7;
          if (g.packed_code(nb) != kNeighborCode[back]) continue;
          push(nb);
          descended = true;
          break;
        }
        if (!descended) {
          // Subtree complete: d values in it are contiguous, so the
          // running counter is the max discovery time below this cell.
          f[g.index(stack.back().cell)] = counter;
          stack.pop_back();
          ++stats.pops;
        }
      }
    }
  }

  if (stats.cells_labeled != g.valid_count())
    throw Error("flow grid contains a cycle: " +
                std::to_string(g.valid_count() - stats.cells_labeled) +
                " cells unreachable from any root");

  return {MnsGrid(g.ncols(), g.nrows(), g.xllcorner(), g.yllcorner(),
                  g.cellsize(), std::move(d), std::move(f)),
          stats};
}

bool subtree_contains(const MnsGrid& m, CellIndex v_star,
                      std::optional<CellIndex> u) {
  if (!u || !m.in_range(*u)) return false;
  uint64_t du = m.discovery(*u);
  if (du == 0) return false;
  return m.discovery(v_star) <= du && du <= m.finish(v_star);
}

namespace {

constexpr char kMagic[4] = {'M', 'N', 'S', '1'};

void put_u32(std::ostream& out, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = char((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ostream& out, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

void put_f64(std::ostream& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

bool get_bytes(std::istream& in, char* b, std::size_t n) {
  in.read(b, std::streamsize(n));
  return std::size_t(in.gcount()) == n;
}

uint32_t get_u32(std::istream& in) {
  char b[4];
  if (!get_bytes(in, b, 4)) throw FormatError("truncated MNS stream");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t(uint8_t(b[i])) << (8 * i);
  return v;
}

uint64_t get_u64(std::istream& in) {
  char b[8];
  if (!get_bytes(in, b, 8)) throw FormatError("truncated MNS stream");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(uint8_t(b[i])) << (8 * i);
  return v;
}

double get_f64(std::istream& in) {
  uint64_t bits = get_u64(in);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void write_mns(const MnsGrid& m, std::ostream& out) {
  out.write(kMagic, 4);
  put_u32(out, uint32_t(m.ncols()));
  put_u32(out, uint32_t(m.nrows()));
  put_f64(out, m.xllcorner());
  put_f64(out, m.yllcorner());
  put_f64(out, m.cellsize());
  for (int y = 0; y < m.nrows(); ++y) {
    for (int x = 0; x < m.ncols(); ++x) {
      put_u64(out, m.discovery({x, y}));
      put_u64(out, m.finish({x, y}));
    }
  }
}

MnsGrid read_mns(std::istream& in) {
  char magic[4];
  if (!get_bytes(in, magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw FormatError("bad MNS magic bytes");
  uint32_t ncols = get_u32(in);
  uint32_t nrows = get_u32(in);
  if (ncols == 0 || nrows == 0)
    throw FormatError("MNS dimensions must be positive");
  double xll = get_f64(in);
  double yll = get_f64(in);
  double cs = get_f64(in);
  if (!(cs > 0.0)) throw FormatError("MNS cellsize must be positive");

  std::size_t n = std::size_t(ncols) * std::size_t(nrows);
  std::vector<uint64_t> d(n), f(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = get_u64(in);
    f[i] = get_u64(in);
  }
  char extra;
  if (in.read(&extra, 1) && in.gcount() == 1)
    throw FormatError("trailing bytes after MNS records");

  uint64_t n_valid = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((d[i] == 0) != (f[i] == 0))
      throw FormatError("MNS record " + std::to_string(i) +
                        " mixes labeled and nodata sentinels");
    if (d[i] != 0) ++n_valid;
  }
  std::vector<uint8_t> seen(n_valid + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] == 0) continue;
    if (d[i] > n_valid || f[i] > n_valid)
      throw FormatError("MNS label exceeds valid cell count at record " +
                        std::to_string(i));
    if (d[i] > f[i])
      throw FormatError("MNS discovery exceeds finish at record " +
                        std::to_string(i));
    if (seen[d[i]]++)
      throw FormatError("duplicate MNS discovery label " +
                        std::to_string(d[i]));
  }

  return MnsGrid(int(ncols), int(nrows), xll, yll, cs, std::move(d),
                 std::move(f));
}

MnsGrid load_mns(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_mns(in);
}

void save_mns(const MnsGrid& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_mns(m, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace watermarch
