#pragma once

#include <iosfwd>
#include <string>

#include "watermarch/grid.hpp"

namespace watermarch {

/// Parses an ESRI ASCII grid: six "key value" header lines (ncols, nrows,
/// xllcorner, yllcorner, cellsize, NODATA_value; keys case-insensitive, in
/// that order) followed by nrows lines of ncols integers, north row first.
/// Throws ParseError naming the offending line/column.
D8Grid parse_ascii_grid(std::istream& in);
D8Grid parse_ascii_grid(const std::string& text);

/// Emits the bit-exact serial form: lowercase keys, single spaces,
/// newline-terminated rows. Real-valued header fields use the shortest
/// round-trip decimal representation.
void serialize_ascii_grid(const D8Grid& g, std::ostream& out);
std::string serialize_ascii_grid(const D8Grid& g);

D8Grid load_ascii_grid(const std::string& path);
void save_ascii_grid(const D8Grid& g, const std::string& path);

}  // namespace watermarch
