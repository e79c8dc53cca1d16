#include "gazforge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gazforge::geom {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

double haversine_m(const PointLL& a, const PointLL& b) {
  double lat1 = a.lat * kDegToRad, lat2 = b.lat * kDegToRad;
  double dlat = (b.lat - a.lat) * kDegToRad;
  double dlon = (b.lon - a.lon) * kDegToRad;
  double s = std::sin(dlat / 2), t = std::sin(dlon / 2);
  double h = s * s + std::cos(lat1) * std::cos(lat2) * t * t;
  h = std::min(1.0, h);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

LocalFrame LocalFrame::about(const PointLL& origin) {
  return LocalFrame{origin, kMetersPerDegLat * std::cos(origin.lat * kDegToRad)};
}

std::pair<double, double> LocalFrame::to_local(const PointLL& p) const {
  return {(p.lon - origin.lon) * m_per_deg_lon, (p.lat - origin.lat) * kMetersPerDegLat};
}

PointLL LocalFrame::from_local(double x, double y) const {
  return PointLL{origin.lon + x / m_per_deg_lon, origin.lat + y / kMetersPerDegLat};
}

namespace {

bool on_segment(const PointLL& p, const PointLL& a, const PointLL& b) {
  double cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
  if (cross != 0.0) return false;
  return p.lon >= std::min(a.lon, b.lon) && p.lon <= std::max(a.lon, b.lon) &&
         p.lat >= std::min(a.lat, b.lat) && p.lat <= std::max(a.lat, b.lat);
}

}  // namespace

bool point_in_ring(const PointLL& p, const Ring& ring) {
  if (ring.size() < 4) throw std::invalid_argument("point_in_ring: ring needs >= 4 points");
  // Boundary first: edges and vertices are inside.
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    if (on_segment(p, ring[i], ring[i + 1])) return true;
  }
  // Even-odd crossing count with the half-open rule.
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 2; i + 1 < ring.size(); j = i++) {
    const PointLL& a = ring[i];
    const PointLL& b = ring[j];
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      double x = a.lon + (p.lat - a.lat) / (b.lat - a.lat) * (b.lon - a.lon);
      if (p.lon < x) inside = !inside;
    }
  }
  return inside;
}

bool point_in_polygon(const PointLL& p, const Polygon& poly) {
  return point_in_ring(p, poly.outer);
}

PointLL centroid(std::span<const PointLL> points) {
  if (points.empty()) throw std::invalid_argument("centroid: empty point list");
  double lon = 0, lat = 0;
  for (const auto& p : points) {
    lon += p.lon;
    lat += p.lat;
  }
  double n = static_cast<double>(points.size());
  return PointLL{lon / n, lat / n};
}

Ellipse sde(std::span<const PointLL> points, double k, bool sqrt2_correction) {
  if (points.size() < 3) throw std::invalid_argument("sde: needs >= 3 points");
  if (k <= 0) throw std::invalid_argument("sde: k must be positive");
  PointLL c = centroid(points);
  LocalFrame frame = LocalFrame::about(c);

  double sxx = 0, syy = 0, sxy = 0;
  bool all_same = true;
  std::vector<std::pair<double, double>> local;
  local.reserve(points.size());
  for (const auto& p : points) {
    auto [x, y] = frame.to_local(p);
    local.emplace_back(x, y);
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
    if (x != 0.0 || y != 0.0) all_same = false;
  }
  if (all_same) throw degenerate_error("sde: all points identical");

  double theta;
  if (sxy == 0.0) {
    theta = (sxx >= syy) ? std::numbers::pi / 2 : 0.0;  // axis-aligned case
  } else {
    double a = sxx - syy;
    double b = std::sqrt(a * a + 4.0 * sxy * sxy);
    theta = std::atan((a + b) / (2.0 * sxy));
  }

  double n = static_cast<double>(points.size());
  auto sigma_along = [&](double phi) {
    double su = 0;
    double sp = std::sin(phi), cp = std::cos(phi);
    for (const auto& [x, y] : local) {
      double u = x * sp + y * cp;  // direction (sin phi, cos phi): phi clockwise from north
      su += u * u;
    }
    return std::sqrt(su / n);
  };
  double s1 = sigma_along(theta);
  double s2 = sigma_along(theta + std::numbers::pi / 2);
  double major_theta = theta, smaj = s1, smin = s2;
  if (s2 > s1) {
    major_theta = theta + std::numbers::pi / 2;
    smaj = s2;
    smin = s1;
  }
  major_theta = std::fmod(major_theta, std::numbers::pi);
  if (major_theta < 0) major_theta += std::numbers::pi;

  double scale = k * (sqrt2_correction ? std::numbers::sqrt2 : 1.0);
  return Ellipse{c, scale * smaj, scale * smin, major_theta};
}

bool point_in_ellipse(const PointLL& p, const Ellipse& e) {
  LocalFrame frame = LocalFrame::about(e.center);
  auto [x, y] = frame.to_local(p);
  double sp = std::sin(e.theta), cp = std::cos(e.theta);
  double u = x * sp + y * cp;   // along major axis
  double v = x * cp - y * sp;   // along minor axis
  double a = std::max(e.semi_major_m, 1e-9);
  double b = std::max(e.semi_minor_m, 1e-9);
  return (u / a) * (u / a) + (v / b) * (v / b) <= 1.0;
}

namespace {

double cross3(const PointLL& o, const PointLL& a, const PointLL& b) {
  return (a.lon - o.lon) * (b.lat - o.lat) - (a.lat - o.lat) * (b.lon - o.lon);
}

}  // namespace

Polygon convex_hull(std::span<const PointLL> points) {
  if (points.size() < 3) throw std::invalid_argument("convex_hull: needs >= 3 points");
  std::vector<PointLL> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const PointLL& a, const PointLL& b) {
    return a.lon != b.lon ? a.lon < b.lon : a.lat < b.lat;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw degenerate_error("convex_hull: fewer than 3 distinct points");

  std::vector<PointLL> hull(2 * pts.size());
  std::size_t h = 0;
  for (const auto& p : pts) {  // lower
    while (h >= 2 && cross3(hull[h - 2], hull[h - 1], p) <= 0) --h;
    hull[h++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = h + 1; i-- > 0;) {  // upper
    while (h >= lower && cross3(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
    hull[h++] = pts[i];
  }
  hull.resize(h - 1);
  if (hull.size() < 3) throw degenerate_error("convex_hull: all points collinear");
  hull.push_back(hull.front());  // close the ring; chain above is CCW
  Polygon poly;
  poly.outer = std::move(hull);
  return poly;
}

Polygon min_bounding_rect(std::span<const PointLL> points) {
  if (points.empty()) throw std::invalid_argument("min_bounding_rect: needs >= 1 point");
  BBox b = BBox::of(points);
  Polygon poly;
  poly.outer = {PointLL{b.min_lon, b.min_lat}, PointLL{b.max_lon, b.min_lat},
                PointLL{b.max_lon, b.max_lat}, PointLL{b.min_lon, b.max_lat},
                PointLL{b.min_lon, b.min_lat}};
  return poly;
}

Polygon ellipse_to_polygon(const Ellipse& e, int segments) {
  LocalFrame frame = LocalFrame::about(e.center);
  double sp = std::sin(e.theta), cp = std::cos(e.theta);
  Ring ring;
  ring.reserve(segments + 1);
  for (int i = 0; i < segments; ++i) {
    double t = 2.0 * std::numbers::pi * i / segments;
    double u = e.semi_major_m * std::cos(t);
    double v = e.semi_minor_m * std::sin(t);
    // major axis direction (sin theta, cos theta), minor (cos theta, -sin theta)
    double x = u * sp + v * cp;
    double y = u * cp - v * sp;
    ring.push_back(frame.from_local(x, y));
  }
  ring.push_back(ring.front());
  Polygon poly;
  poly.outer = std::move(ring);
  return poly;
}

}  // namespace gazforge::geom
