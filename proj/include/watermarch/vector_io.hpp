#pragma once

#include <iosfwd>

#include "watermarch/march.hpp"
#include "watermarch/mns.hpp"

namespace watermarch {

/// WKT POLYGON in world coordinates: counterclockwise exterior ring, first
/// coordinate repeated last, 6 decimal places.
void write_wkt(const BoundaryPolygon& poly, const Georef& georef,
               std::ostream& out);

/// GeoJSON Feature with a single-ring Polygon geometry under the same
/// closure, orientation, and precision rules as the WKT writer.
void write_geojson(const BoundaryPolygon& poly, const Georef& georef,
                   CellIndex pour, uint64_t area_cells, std::ostream& out);

}  // namespace watermarch
