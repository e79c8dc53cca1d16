#include "gazforge/footprints.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gazforge/jobs.hpp"
#include "gazforge/tokenize.hpp"

namespace gazforge::footprints {

void FuzzyParams::validate() const {
  if (beta <= 0) throw std::invalid_argument("FuzzyParams: beta must be > 0");
  if (c <= 0) throw std::invalid_argument("FuzzyParams: c must be > 0");
  if (d1 < 0 || d2 <= d1) throw std::invalid_argument("FuzzyParams: need 0 <= d1 < d2");
  if (unit_scale <= 0) throw std::invalid_argument("FuzzyParams: unit_scale must be > 0");
}

double fuzzy_membership(double d_m, const FuzzyParams& p) {
  if (d_m <= p.d1) return 1.0;
  if (d_m >= p.d2) return 0.0;
  double mu = p.c / std::pow(d_m / p.unit_scale, p.beta);
  return std::clamp(mu, 0.0, 1.0);
}

AlphaCut alpha_cut(std::span<const GeoRecord> records, const PointLL& center,
                   const FuzzyParams& p, double alpha) {
  if (alpha <= 0 || alpha > 1) throw std::invalid_argument("alpha_cut: alpha must be in (0, 1]");
  p.validate();
  AlphaCut cut;
  cut.alpha = alpha;
  for (const auto& rec : records) {
    double mu = fuzzy_membership(geom::haversine_m(rec.point(), center), p);
    if (mu >= alpha) cut.members.push_back(ScoredRecord{rec, mu});
  }
  return cut;
}

std::vector<GeoRecord> match_by_name(std::span<const GeoRecord> records, const std::string& name) {
  auto needle = tokenize(name);
  if (needle.empty()) throw std::invalid_argument("match_by_name: name must be non-empty");
  std::vector<GeoRecord> out;
  for (const auto& rec : records) {
    if (contains_subsequence(match_tokens(rec), needle)) out.push_back(rec);
  }
  return out;
}

namespace {

std::vector<TagCount> top_tags_of(std::span<const GeoRecord> records, std::size_t k) {
  // Plain-frequency mode: set semantics per record, no token exclusion.
  std::map<std::string, std::int64_t> counts;
  for (const auto& rec : records) {
    auto toks = match_tokens(rec);
    std::sort(toks.begin(), toks.end());
    toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
    for (const auto& t : toks) ++counts[t];
  }
  std::vector<TagCount> all(counts.begin(), counts.end());
  std::sort(all.begin(), all.end(), [](const TagCount& a, const TagCount& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

std::set<std::string> users_of(std::span<const GeoRecord> records) {
  std::set<std::string> out;
  for (const auto& rec : records) out.insert(rec.user_id);
  return out;
}

std::vector<PointLL> points_of(std::span<const GeoRecord> records) {
  std::vector<PointLL> out;
  out.reserve(records.size());
  for (const auto& rec : records) out.push_back(rec.point());
  return out;
}

void fill_provenance(GazetteerEntry& entry, std::span<const GeoRecord> used, std::size_t k = 10) {
  entry.top_tags = top_tags_of(used, k);
  entry.contributors = users_of(used);
  entry.trusted_contributors = entry.contributors;  // recomputed by trust filtering
  entry.n_points = static_cast<std::int64_t>(used.size());
}

}  // namespace

PointEntryResult extract_point_entry(std::span<const GeoRecord> records, const std::string& name,
                                     const std::string& feature_type, bool sqrt2_correction) {
  if (records.size() < 3)
    throw insufficient_data_error("extract_point_entry: needs >= 3 matched records, got " +
                                  std::to_string(records.size()));
  auto pts = points_of(records);

  PointEntryResult result;
  result.entry.name = name;
  result.entry.feature_type = feature_type;

  std::vector<GeoRecord> sps;
  try {
    result.sde_2s = geom::sde(pts, 2.0, sqrt2_correction);
    result.sde_1s = geom::sde(pts, 1.0, sqrt2_correction);
    for (const auto& rec : records) {
      if (geom::point_in_ellipse(rec.point(), result.sde_2s)) sps.push_back(rec);
    }
  } catch (const geom::degenerate_error&) {
    result.degenerate = true;
    sps.assign(records.begin(), records.end());
  }
  if (sps.empty()) {  // ellipse collapsed below point spacing
    result.degenerate = true;
    sps.assign(records.begin(), records.end());
  }

  auto sp_pts = points_of(sps);
  result.entry.footprint = geom::centroid(sp_pts);
  if (!result.degenerate) {
    std::vector<PointLL> one_sigma_pts;
    for (const auto& rec : records) {
      if (geom::point_in_ellipse(rec.point(), result.sde_1s)) one_sigma_pts.push_back(rec.point());
    }
    result.centroid_1s =
        one_sigma_pts.empty() ? std::get<PointLL>(result.entry.footprint)
                              : geom::centroid(one_sigma_pts);
  } else {
    result.centroid_1s = std::get<PointLL>(result.entry.footprint);
  }
  fill_provenance(result.entry, sps);
  return result;
}

LineEntryResult extract_line_entry(std::span<const GeoRecord> records, const std::string& name,
                                   const std::string& feature_type,
                                   const std::optional<Polygon>& clip) {
  std::vector<GeoRecord> used;
  for (const auto& rec : records) {
    if (clip && !geom::point_in_polygon(rec.point(), *clip)) continue;
    used.push_back(rec);
  }

  // Longitude sequence: dedup identical coordinates, sort by lon then lat.
  std::vector<PointLL> vertices;
  std::size_t dups = 0;
  for (const auto& rec : used) {
    PointLL p = rec.point();
    if (std::find(vertices.begin(), vertices.end(), p) != vertices.end()) {
      ++dups;
      continue;
    }
    vertices.push_back(p);
  }
  if (vertices.size() < 2)
    throw insufficient_data_error("extract_line_entry: needs >= 2 distinct points after clip, got " +
                                  std::to_string(vertices.size()));
  std::sort(vertices.begin(), vertices.end(), [](const PointLL& a, const PointLL& b) {
    return a.lon != b.lon ? a.lon < b.lon : a.lat < b.lat;
  });

  LineEntryResult result;
  result.n_deduplicated = dups;
  result.entry.name = name;
  result.entry.feature_type = feature_type;
  LineString ls;
  ls.points = std::move(vertices);
  result.entry.footprint = std::move(ls);
  fill_provenance(result.entry, used);
  return result;
}

PolygonEntryResult extract_polygon_entry(std::span<const GeoRecord> records,
                                         const std::string& name,
                                         const std::string& feature_type, const FuzzyParams& p,
                                         double alpha, BoundaryKind boundary) {
  if (records.empty())
    throw insufficient_data_error("extract_polygon_entry: no matched records");
  auto all_pts = points_of(records);
  PointLL center = geom::centroid(all_pts);
  AlphaCut cut = alpha_cut(records, center, p, alpha);
  if (cut.members.empty())
    throw insufficient_data_error("extract_polygon_entry: alpha cut at " + std::to_string(alpha) +
                                  " is empty");

  std::vector<GeoRecord> used;
  used.reserve(cut.members.size());
  for (const auto& m : cut.members) used.push_back(m.record);
  auto member_pts = points_of(used);

  PolygonEntryResult result;
  result.center = center;
  result.members = cut.members;
  result.entry.name = name;
  result.entry.feature_type = feature_type;
  if (boundary == BoundaryKind::kConvexHull) {
    try {
      result.entry.footprint = geom::convex_hull(member_pts);
    } catch (const geom::degenerate_error& e) {
      throw geom::degenerate_error(std::string(e.what()) +
                                   " (try the minimum bounding rectangle boundary)");
    }
  } else {
    result.entry.footprint = geom::min_bounding_rect(member_pts);
  }
  fill_provenance(result.entry, used);
  return result;
}

}  // namespace gazforge::footprints
