#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gazforge/record.hpp"

namespace gazforge::ingest {

using AttrMap = std::map<std::string, nlohmann::json>;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- TSV records (Table 2 column order) --------------------------------

struct TsvResult {
  std::vector<GeoRecord> records;
  std::size_t skipped = 0;  // malformed lines, never fatal
};

// 9 tab-separated columns: photo id, title, description, comma-separated
// tags, taken time, uploaded time, latitude, longitude, user id.
TsvResult parse_tsv(std::istream& in);
TsvResult parse_tsv_text(const std::string& text);

std::string format_tsv(std::span<const GeoRecord> records);

// Drops records with non-finite or out-of-range coordinates; when a bbox is
// given keeps only records inside it (boundary inclusive). Order preserved.
std::vector<GeoRecord> filter_valid(std::span<const GeoRecord> records,
                                    const std::optional<BBox>& bbox = std::nullopt);

// ---- GeoJSON ------------------------------------------------------------

struct GeoFeature {
  std::string key;  // empty when the source had no key field
  Geometry geometry;
  AttrMap attributes;
};

// A keyed collection of polygon features used as spatial-join targets.
// MultiPolygon features keep their parts together here; join_parts() exposes
// the per-part view keyed "<key>#0", "<key>#1", ... that the join works on.
struct PolygonFeature {
  std::string key;
  std::vector<Polygon> parts;  // >= 1
  AttrMap attributes;
};

struct PolygonLayer {
  std::string name;
  std::string key_field;
  std::vector<PolygonFeature> features;

  struct JoinPart {
    std::string key;  // suffixed for multipart features
    const Polygon* polygon;
  };
  std::vector<JoinPart> join_parts() const;
  const PolygonFeature* find(const std::string& key) const;
};

struct LayerWarnings {
  std::vector<std::size_t> missing_key_indices;
  std::size_t skipped_non_polygon = 0;
};

// Accepts a FeatureCollection or a single Feature; attributes are read from
// standard "properties" or from the nonstandard "fields" block (either on
// the feature or nested inside its geometry). Throws ParseError on invalid
// JSON or duplicate keys; non-polygon features are skipped with a warning.
PolygonLayer read_geojson_layer(const std::string& text, const std::string& key_field,
                                LayerWarnings* warnings = nullptr);

// Generic feature reader for any supported geometry type.
std::vector<GeoFeature> read_geojson_features(const std::string& text);

// RFC 7946 FeatureCollection: coordinates [lon, lat], properties under
// "properties", lexicographic property keys, features in input order.
// `metadata`, when non-null, is embedded as a top-level foreign member.
std::string write_geojson(std::span<const GeoFeature> features,
                          const nlohmann::json* metadata = nullptr);

nlohmann::json geometry_to_json(const Geometry& g);
Geometry geometry_from_json(const nlohmann::json& g);

}  // namespace gazforge::ingest
