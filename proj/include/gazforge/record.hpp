#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gazforge/geo.hpp"

namespace gazforge {

// One geotagged photo row. Timestamps are kept as the raw input strings;
// parse_timestamp() yields an epoch value when the string is in one of the
// two accepted formats ("M/D/YYYY H:MM" or ISO-8601), otherwise nullopt and
// the record is excluded from time-based logic.
struct GeoRecord {
  std::string photo_id;
  std::string title;
  std::string description;
  std::vector<std::string> tags;
  std::string taken_time;
  std::string uploaded_time;
  double lat = 0.0;
  double lon = 0.0;
  std::string user_id;

  PointLL point() const { return PointLL{lon, lat}; }
};

// Seconds since the Unix epoch, UTC. Returns nullopt for unparseable input.
std::optional<std::int64_t> parse_timestamp(const std::string& text);

using TagCount = std::pair<std::string, std::int64_t>;

// A gazetteer entry: name, feature type, footprint geometry, ranked tag
// descriptions and contributor provenance.
struct GazetteerEntry {
  std::string name;
  std::string feature_type;
  Geometry footprint;
  std::vector<TagCount> top_tags;  // count desc, token asc
  std::set<std::string> contributors;
  std::set<std::string> trusted_contributors;  // subset of contributors
  std::int64_t n_points = 0;                   // records actually used
};

}  // namespace gazforge
