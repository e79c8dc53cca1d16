#pragma once

#include <span>
#include <vector>

#include "gazforge/geo.hpp"

namespace gazforge::geom {

inline constexpr double kEarthRadiusM = 6371008.8;
// Equirectangular approximation used for all local planar math.
inline constexpr double kMetersPerDegLat = 111320.0;

// Great-circle distance in meters.
double haversine_m(const PointLL& a, const PointLL& b);

// Local planar frame in meters about an origin: x east, y north.
struct LocalFrame {
  PointLL origin;
  double m_per_deg_lon;  // kMetersPerDegLat * cos(origin.lat)

  static LocalFrame about(const PointLL& origin);
  // x = east meters, y = north meters
  std::pair<double, double> to_local(const PointLL& p) const;
  PointLL from_local(double x, double y) const;
};

// Even-odd ray casting over the outer ring, boundary-inclusive: points on an
// edge or vertex test true. Holes are ignored. Throws std::invalid_argument
// for rings with fewer than 4 points.
bool point_in_polygon(const PointLL& p, const Polygon& poly);
bool point_in_ring(const PointLL& p, const Ring& ring);

// Arithmetic mean of lon and lat. Throws std::invalid_argument when empty.
PointLL centroid(std::span<const PointLL> points);

// Standard deviational ellipse. theta is the rotation of the major axis
// clockwise from north, in [0, pi).
struct Ellipse {
  PointLL center;
  double semi_major_m = 0.0;
  double semi_minor_m = 0.0;
  double theta = 0.0;
};

// Classical SDE: center = centroid, rotation from the arctangent expression
// over the deviation sums, axis sigmas from rotated deviations. When
// sqrt2_correction is on (the default) both sigmas are scaled by sqrt(2),
// which puts the k=2 ellipse near 98% coverage of a bivariate normal cloud.
// Requires >= 3 points; throws degenerate_error when all points coincide.
Ellipse sde(std::span<const PointLL> points, double k, bool sqrt2_correction = true);

bool point_in_ellipse(const PointLL& p, const Ellipse& e);

// Monotone-chain convex hull, counterclockwise closed ring, collinear
// boundary points excluded. Throws degenerate_error when all points are
// collinear (or fewer than 3 distinct).
Polygon convex_hull(std::span<const PointLL> points);

// Axis-aligned minimum bounding rectangle as a closed ring. A single point
// yields a degenerate zero-area ring.
Polygon min_bounding_rect(std::span<const PointLL> points);

// 64-segment polygon approximation of an ellipse, for GeoJSON serialization.
Polygon ellipse_to_polygon(const Ellipse& e, int segments = 64);

struct degenerate_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace gazforge::geom
