#pragma once

#include <cmath>
#include <span>
#include <variant>
#include <vector>

namespace gazforge {

// Coordinates are WGS84 degrees, stored lon-first to match GeoJSON order.
struct PointLL {
  double lon = 0.0;
  double lat = 0.0;

  friend bool operator==(const PointLL& a, const PointLL& b) {
    return a.lon == b.lon && a.lat == b.lat;
  }
};

// Closed ring: first point equals last point, >= 4 points.
using Ring = std::vector<PointLL>;

struct LineString {
  std::vector<PointLL> points;  // >= 2 points, no duplicate consecutive points
};

struct Polygon {
  Ring outer;
  std::vector<Ring> holes;  // parsed and carried through, ignored by containment
};

struct MultiPolygon {
  std::vector<Polygon> parts;
};

struct BBox {
  double min_lon = 0.0;
  double min_lat = 0.0;
  double max_lon = 0.0;
  double max_lat = 0.0;

  bool contains(const PointLL& p) const {
    return p.lon >= min_lon && p.lon <= max_lon && p.lat >= min_lat &&
           p.lat <= max_lat;
  }
  void expand(const PointLL& p) {
    if (p.lon < min_lon) min_lon = p.lon;
    if (p.lon > max_lon) max_lon = p.lon;
    if (p.lat < min_lat) min_lat = p.lat;
    if (p.lat > max_lat) max_lat = p.lat;
  }
  static BBox of(std::span<const PointLL> pts) {
    BBox b{1e30, 1e30, -1e30, -1e30};
    for (const auto& p : pts) b.expand(p);
    return b;
  }
};

using Geometry = std::variant<PointLL, LineString, Polygon, BBox, MultiPolygon>;

inline bool valid_lat(double lat) { return std::isfinite(lat) && lat >= -90.0 && lat <= 90.0; }
inline bool valid_lon(double lon) { return std::isfinite(lon) && lon >= -180.0 && lon <= 180.0; }

inline bool ring_closed(const Ring& r) {
  return r.size() >= 4 && r.front() == r.back();
}

}  // namespace gazforge
