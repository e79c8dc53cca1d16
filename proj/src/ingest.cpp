#include "gazforge/ingest.hpp"

#include <charconv>
#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gazforge::ingest {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

bool parse_double(const std::string& s, double& out) {
  std::string t = trim(s);
  if (t.empty()) return false;
  const char* begin = t.c_str();
  const char* end = begin + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

std::string sanitize_field(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

TsvResult parse_tsv(std::istream& in) {
  if (!in) throw ParseError("parse_tsv: unreadable stream");
  TsvResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_on(line, '\t');
    if (fields.size() != 9) {
      ++result.skipped;
      continue;
    }
    GeoRecord rec;
    rec.photo_id = trim(fields[0]);
    rec.title = fields[1];
    rec.description = fields[2];
    for (const auto& t : split_on(fields[3], ',')) {
      std::string tag = trim(t);
      if (!tag.empty()) rec.tags.push_back(std::move(tag));
    }
    rec.taken_time = trim(fields[4]);
    rec.uploaded_time = trim(fields[5]);
    if (!parse_double(fields[6], rec.lat) || !parse_double(fields[7], rec.lon) ||
        rec.photo_id.empty()) {
      ++result.skipped;
      continue;
    }
    rec.user_id = trim(fields[8]);
    if (rec.user_id.empty()) {
      ++result.skipped;
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  if (in.bad()) throw ParseError("parse_tsv: I/O error while reading stream");
  return result;
}

TsvResult parse_tsv_text(const std::string& text) {
  std::istringstream in(text);
  return parse_tsv(in);
}

std::string format_tsv(std::span<const GeoRecord> records) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& r : records) {
    out << sanitize_field(r.photo_id) << '\t' << sanitize_field(r.title) << '\t'
        << sanitize_field(r.description) << '\t';
    for (std::size_t i = 0; i < r.tags.size(); ++i) {
      if (i) out << ',';
      out << sanitize_field(r.tags[i]);
    }
    out << '\t' << sanitize_field(r.taken_time) << '\t' << sanitize_field(r.uploaded_time)
        << '\t' << r.lat << '\t' << r.lon << '\t' << sanitize_field(r.user_id) << '\n';
  }
  return out.str();
}

std::vector<GeoRecord> filter_valid(std::span<const GeoRecord> records,
                                    const std::optional<BBox>& bbox) {
  std::vector<GeoRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (!valid_lat(r.lat) || !valid_lon(r.lon)) continue;
    if (bbox && !bbox->contains(r.point())) continue;
    out.push_back(r);
  }
  return out;
}

// ---- GeoJSON ------------------------------------------------------------

namespace {

PointLL coord_from_json(const json& c) {
  if (!c.is_array() || c.size() < 2) throw ParseError("GeoJSON: bad coordinate pair");
  return PointLL{c[0].get<double>(), c[1].get<double>()};
}

Ring ring_from_json(const json& arr) {
  Ring ring;
  for (const auto& c : arr) ring.push_back(coord_from_json(c));
  return ring;
}

Polygon polygon_from_rings(const json& rings) {
  Polygon poly;
  if (rings.empty()) throw ParseError("GeoJSON: polygon without rings");
  poly.outer = ring_from_json(rings[0]);
  if (!ring_closed(poly.outer)) throw ParseError("GeoJSON: polygon ring not closed");
  for (std::size_t i = 1; i < rings.size(); ++i) poly.holes.push_back(ring_from_json(rings[i]));
  return poly;
}

json ring_to_json(const Ring& ring) {
  json arr = json::array();
  for (const auto& p : ring) arr.push_back(json::array({p.lon, p.lat}));
  return arr;
}

json polygon_rings_to_json(const Polygon& poly) {
  json rings = json::array();
  rings.push_back(ring_to_json(poly.outer));
  for (const auto& h : poly.holes) rings.push_back(ring_to_json(h));
  return rings;
}

AttrMap attrs_from_feature(const json& feat) {
  AttrMap attrs;
  const json* src = nullptr;
  if (feat.contains("properties") && feat["properties"].is_object()) {
    src = &feat["properties"];
  } else if (feat.contains("fields") && feat["fields"].is_object()) {
    src = &feat["fields"];
  } else if (feat.contains("geometry") && feat["geometry"].is_object() &&
             feat["geometry"].contains("fields") && feat["geometry"]["fields"].is_object()) {
    // the nonstandard variant that nests the attribute block inside geometry
    src = &feat["geometry"]["fields"];
  }
  if (src) {
    for (auto it = src->begin(); it != src->end(); ++it) attrs[it.key()] = it.value();
  }
  return attrs;
}

}  // namespace

Geometry geometry_from_json(const json& g) {
  if (!g.is_object() || !g.contains("type")) throw ParseError("GeoJSON: geometry without type");
  std::string type = g["type"].get<std::string>();
  const json& coords = g.at("coordinates");
  if (type == "Point") return coord_from_json(coords);
  if (type == "LineString") {
    LineString ls;
    ls.points = ring_from_json(coords);
    return ls;
  }
  if (type == "Polygon") return polygon_from_rings(coords);
  if (type == "MultiPolygon") {
    MultiPolygon mp;
    for (const auto& rings : coords) mp.parts.push_back(polygon_from_rings(rings));
    return mp;
  }
  throw ParseError("GeoJSON: unsupported geometry type '" + type + "'");
}

json geometry_to_json(const Geometry& g) {
  json out;
  if (const auto* p = std::get_if<PointLL>(&g)) {
    out["type"] = "Point";
    out["coordinates"] = json::array({p->lon, p->lat});
  } else if (const auto* ls = std::get_if<LineString>(&g)) {
    out["type"] = "LineString";
    out["coordinates"] = ring_to_json(ls->points);
  } else if (const auto* poly = std::get_if<Polygon>(&g)) {
    out["type"] = "Polygon";
    out["coordinates"] = polygon_rings_to_json(*poly);
  } else if (const auto* mp = std::get_if<MultiPolygon>(&g)) {
    out["type"] = "MultiPolygon";
    json parts = json::array();
    for (const auto& part : mp->parts) parts.push_back(polygon_rings_to_json(part));
    out["coordinates"] = parts;
  } else if (const auto* b = std::get_if<BBox>(&g)) {
    out["type"] = "Polygon";
    Polygon poly;
    poly.outer = {PointLL{b->min_lon, b->min_lat}, PointLL{b->max_lon, b->min_lat},
                  PointLL{b->max_lon, b->max_lat}, PointLL{b->min_lon, b->max_lat},
                  PointLL{b->min_lon, b->min_lat}};
    out["coordinates"] = polygon_rings_to_json(poly);
  }
  return out;
}

std::vector<GeoFeature> read_geojson_features(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("GeoJSON: invalid JSON: ") + e.what());
  }
  std::vector<const json*> feats;
  if (doc.is_object() && doc.value("type", "") == "FeatureCollection") {
    for (const auto& f : doc.at("features")) feats.push_back(&f);
  } else if (doc.is_object() && doc.value("type", "") == "Feature") {
    feats.push_back(&doc);
  } else {
    throw ParseError("GeoJSON: expected Feature or FeatureCollection");
  }
  std::vector<GeoFeature> out;
  for (const json* f : feats) {
    GeoFeature gf;
    if (!f->contains("geometry")) throw ParseError("GeoJSON: feature without geometry");
    gf.geometry = geometry_from_json((*f)["geometry"]);
    gf.attributes = attrs_from_feature(*f);
    out.push_back(std::move(gf));
  }
  return out;
}

std::vector<PolygonLayer::JoinPart> PolygonLayer::join_parts() const {
  std::vector<JoinPart> out;
  for (const auto& f : features) {
    if (f.parts.size() == 1) {
      out.push_back(JoinPart{f.key, &f.parts[0]});
    } else {
      for (std::size_t i = 0; i < f.parts.size(); ++i) {
        out.push_back(JoinPart{f.key + "#" + std::to_string(i), &f.parts[i]});
      }
    }
  }
  return out;
}

const PolygonFeature* PolygonLayer::find(const std::string& key) const {
  for (const auto& f : features) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

PolygonLayer read_geojson_layer(const std::string& text, const std::string& key_field,
                                LayerWarnings* warnings) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("GeoJSON: invalid JSON: ") + e.what());
  }
  std::vector<json> feats;
  if (doc.is_object() && doc.value("type", "") == "FeatureCollection") {
    for (auto& f : doc.at("features")) feats.push_back(f);
  } else if (doc.is_object() && doc.value("type", "") == "Feature") {
    feats.push_back(doc);
  } else {
    throw ParseError("GeoJSON: expected Feature or FeatureCollection");
  }

  PolygonLayer layer;
  layer.key_field = key_field;
  LayerWarnings local;
  for (std::size_t idx = 0; idx < feats.size(); ++idx) {
    const json& f = feats[idx];
    if (!f.contains("geometry") || !f["geometry"].is_object()) {
      ++local.skipped_non_polygon;
      continue;
    }
    Geometry g = geometry_from_json(f["geometry"]);
    PolygonFeature pf;
    if (auto* poly = std::get_if<Polygon>(&g)) {
      pf.parts.push_back(std::move(*poly));
    } else if (auto* mp = std::get_if<MultiPolygon>(&g)) {
      pf.parts = std::move(mp->parts);
    } else {
      ++local.skipped_non_polygon;
      continue;
    }
    pf.attributes = attrs_from_feature(f);
    auto it = pf.attributes.find(key_field);
    if (it == pf.attributes.end() || it->second.is_null()) {
      local.missing_key_indices.push_back(idx);
      continue;
    }
    pf.key = it->second.is_string() ? it->second.get<std::string>() : it->second.dump();
    if (layer.find(pf.key)) {
      throw ParseError("GeoJSON layer: duplicate key '" + pf.key + "'");
    }
    layer.features.push_back(std::move(pf));
  }
  if (warnings) *warnings = std::move(local);
  return layer;
}

std::string write_geojson(std::span<const GeoFeature> features, const json* metadata) {
  json doc;
  doc["type"] = "FeatureCollection";
  if (metadata) doc["metadata"] = *metadata;
  json arr = json::array();
  for (const auto& f : features) {
    json feat;
    feat["type"] = "Feature";
    feat["geometry"] = geometry_to_json(f.geometry);
    json props = json::object();
    for (const auto& [k, v] : f.attributes) props[k] = v;
    feat["properties"] = props;
    arr.push_back(std::move(feat));
  }
  doc["features"] = std::move(arr);
  return doc.dump(2) + "\n";
}

}  // namespace gazforge::ingest
