#include "watermarch/vector_io.hpp"

#include <cstdio>
#include <ostream>

namespace watermarch {

namespace {

void append_coord(std::string& buf, double v) {
  char tmp[64];
  std::snprintf(tmp, sizeof tmp, "%.6f", v);
  buf += tmp;
}

}  // namespace

void write_wkt(const BoundaryPolygon& poly, const Georef& georef,
               std::ostream& out) {
  std::string buf = "POLYGON((";
  std::size_t n = poly.points.size();
  for (std::size_t i = 0; i <= n; ++i) {  // <= n closes the ring
    if (i) buf += ", ";
    WorldPoint w = world_coords(georef, poly.points[i % n]);
    append_coord(buf, w.x);
    buf += ' ';
    append_coord(buf, w.y);
  }
  buf += "))\n";
  out << buf;
}

void write_geojson(const BoundaryPolygon& poly, const Georef& georef,
                   CellIndex pour, uint64_t area_cells, std::ostream& out) {
  std::string buf =
      "{\"type\":\"Feature\",\"properties\":{\"pour_x\":" +
      std::to_string(pour.x) + ",\"pour_y\":" + std::to_string(pour.y) +
      ",\"area_cells\":" + std::to_string(area_cells) +
      ",\"boundary_points\":" + std::to_string(poly.points.size()) +
      "},\"geometry\":{\"type\":\"Polygon\",\"coordinates\":[[";
  std::size_t n = poly.points.size();
  for (std::size_t i = 0; i <= n; ++i) {
    if (i) buf += ',';
    WorldPoint w = world_coords(georef, poly.points[i % n]);
    buf += '[';
    append_coord(buf, w.x);
    buf += ',';
    append_coord(buf, w.y);
    buf += ']';
  }
  buf += "]]}}\n";
  out << buf;
}

}  // namespace watermarch
