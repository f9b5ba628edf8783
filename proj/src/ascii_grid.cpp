#include "watermarch/ascii_grid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace watermarch {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return out;
}

struct Token {
  std::string_view text;
  int column = 0;  // 1-based
};

// Splits a line into whitespace-separated tokens, tracking columns.
std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    out.push_back({line.substr(start, i - start), int(start) + 1});
  }
  return out;
}

long long parse_int(const Token& t, int line_no, const char* what) {
  long long v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || p != t.text.data() + t.text.size())
    throw ParseError(std::string("expected integer ") + what + ", got '" +
                         std::string(t.text) + "'",
                     line_no, t.column);
  return v;
}

double parse_real(const Token& t, int line_no, const char* what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || p != t.text.data() + t.text.size())
    throw ParseError(std::string("expected number ") + what + ", got '" +
                         std::string(t.text) + "'",
                     line_no, t.column);
  return v;
}

// Header rows in required order; NODATA_value matches case-insensitively.
constexpr const char* kHeaderKeys[6] = {"ncols",     "nrows",   "xllcorner",
                                        "yllcorner", "cellsize", "nodata_value"};

// Keeps row-major indexes within size_t and cell counts addressable.
constexpr long long kMaxGridDim = 1 << 30;

std::string format_real(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

}  // namespace

D8Grid parse_ascii_grid(std::istream& in) {
  std::string line;
  int line_no = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    return true;
  };

  long long ncols = 0, nrows = 0, nodata = 0;
  double xll = 0, yll = 0, cs = 0;

  for (int h = 0; h < 6; ++h) {
    if (!next_line())
      throw ParseError(std::string("missing header line '") + kHeaderKeys[h] +
                           "'",
                       line_no + 1, 1);
    auto toks = tokenize(line);
    if (toks.size() != 2)
      throw ParseError(std::string("header line must be '") + kHeaderKeys[h] +
                           " value'",
                       line_no, toks.empty() ? 1 : toks[0].column);
    if (lower(toks[0].text) != kHeaderKeys[h])
      throw ParseError("unexpected header key '" + std::string(toks[0].text) +
                           "', expected '" + kHeaderKeys[h] + "'",
                       line_no, toks[0].column);
    switch (h) {
      case 0: ncols = parse_int(toks[1], line_no, "ncols"); break;
      case 1: nrows = parse_int(toks[1], line_no, "nrows"); break;
      case 2: xll = parse_real(toks[1], line_no, "xllcorner"); break;
      case 3: yll = parse_real(toks[1], line_no, "yllcorner"); break;
      case 4: cs = parse_real(toks[1], line_no, "cellsize"); break;
      case 5: nodata = parse_int(toks[1], line_no, "NODATA_value"); break;
    }
  }

  if (ncols < 1 || nrows < 1)
    throw ParseError("ncols and nrows must be positive", line_no, 1);
  if (ncols > kMaxGridDim || nrows > kMaxGridDim)
    throw ParseError("grid dimension exceeds " + std::to_string(kMaxGridDim),
                     line_no, 1);
  if (!(cs > 0.0) || !std::isfinite(cs))
    throw ParseError("cellsize must be positive and finite", line_no, 1);
  if (!std::isfinite(xll) || !std::isfinite(yll))
    throw ParseError("corner coordinates must be finite", line_no, 1);
  if (is_legal_d8_code(nodata))
    throw ParseError("NODATA_value collides with a legal D8 code", line_no, 1);

  std::vector<long long> values;
  values.reserve(std::size_t(ncols) * std::size_t(nrows));

  for (long long r = 0; r < nrows; ++r) {
    if (!next_line())
      throw ParseError("missing data row " + std::to_string(r + 1) + " of " +
                           std::to_string(nrows),
                       line_no + 1, 1);
    auto toks = tokenize(line);
    if ((long long)toks.size() != ncols)
      throw ParseError("expected " + std::to_string(ncols) +
                           " values in data row, got " +
                           std::to_string(toks.size()),
                       line_no, 1);
    for (const Token& t : toks) {
      long long v = parse_int(t, line_no, "cell value");
      if (v != nodata && !is_legal_d8_code(v))
        throw ParseError("illegal D8 code " + std::to_string(v), line_no,
                         t.column);
      values.push_back(v);
    }
  }

  // Trailing content (beyond optional blank lines) is a token-count error.
  while (next_line()) {
    if (!tokenize(line).empty())
      throw ParseError("unexpected data after last row", line_no, 1);
  }

  return D8Grid(int(ncols), int(nrows), xll, yll, cs, nodata, values);
}

D8Grid parse_ascii_grid(const std::string& text) {
  std::istringstream in(text);
  return parse_ascii_grid(in);
}

void serialize_ascii_grid(const D8Grid& g, std::ostream& out) {
  out << "ncols " << g.ncols() << '\n';
  out << "nrows " << g.nrows() << '\n';
  out << "xllcorner " << format_real(g.xllcorner()) << '\n';
  out << "yllcorner " << format_real(g.yllcorner()) << '\n';
  out << "cellsize " << format_real(g.cellsize()) << '\n';
  out << "nodata_value " << g.nodata_code() << '\n';
  for (int y = 0; y < g.nrows(); ++y) {
    for (int x = 0; x < g.ncols(); ++x) {
      if (x) out << ' ';
      out << g.value_at({x, y});
    }
    out << '\n';
  }
}

std::string serialize_ascii_grid(const D8Grid& g) {
  std::ostringstream out;
  serialize_ascii_grid(g, out);
  return out.str();
}

D8Grid load_ascii_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return parse_ascii_grid(in);
}

void save_ascii_grid(const D8Grid& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  serialize_ascii_grid(g, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace watermarch
