#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gazforge/ingest.hpp"
#include "gazforge/mapreduce.hpp"
#include "gazforge/record.hpp"

namespace gazforge::jobs {

using mapreduce::KeyedCounts;

// Keyword lists per feature type; the default ships the stock six types
// (parks, schools, museums, coffee shops, streets, rivers).
struct FeatureTypeLexicon {
  std::map<std::string, std::vector<std::string>> entries;  // lowercase keywords

  static FeatureTypeLexicon default_lexicon();
  // One "type: kw1, kw2, ..." line per entry.
  static FeatureTypeLexicon parse(const std::string& text);
};

enum class CooccurrenceMode {
  kExcludePlaceTokens,  // default: place-name tokens absent from the output
  kPlainFrequency,      // all tokens of matching records counted
};

// Per token t: the number of records whose token stream (tags + title)
// contains both t and the tokenized place name as a contiguous subsequence.
// Per-record contribution per token is 1 (set semantics).
KeyedCounts cooccurrence_job(std::span<const GeoRecord> records, const std::string& place_name,
                             std::size_t workers,
                             CooccurrenceMode mode = CooccurrenceMode::kExcludePlaceTokens,
                             std::size_t block_size = mapreduce::kDefaultBlockSize);

// Top-k by count descending, ties by token ascending.
std::vector<TagCount> rank_tags(const KeyedCounts& counts, std::size_t k);

// Per polygon key: count of points it contains (boundary-inclusive; a point
// in several overlapping polygons counts in each). Multipart layer features
// are joined per part under suffixed keys. When collect_ids, the photo ids
// per key come back sorted.
KeyedCounts spatial_join_job(std::span<const GeoRecord> points, const ingest::PolygonLayer& layer,
                             bool collect_ids, std::size_t workers,
                             std::size_t block_size = mapreduce::kDefaultBlockSize);

struct JoinedFeature {
  std::string key;
  Geometry geometry;  // Polygon or MultiPolygon
  ingest::AttrMap attributes;  // original attributes + "count" (+ "point_ids")
};

// Every layer feature appears in the output; features with no counts get
// count 0; multipart suffixed counts are re-summed under the parent key.
// Throws std::invalid_argument naming any count key that matches no feature.
std::vector<JoinedFeature> join_back(const ingest::PolygonLayer& layer, const KeyedCounts& counts,
                                     bool with_ids = false);

// Records whose tag/title token set intersects the keyword set
// (whole-token, case-insensitive on ASCII).
std::vector<GeoRecord> extract_by_type(std::span<const GeoRecord> records,
                                       const std::string& type_name,
                                       std::span<const std::string> keywords);

struct ScaleSummary {
  std::string layer;
  std::int64_t joined = 0;         // total points joined into the layer
  std::int64_t units_hit = 0;      // features with count > 0
  std::int64_t mean_per_unit = 0;  // over nonzero units, rounded half-up; 0 when none
};

std::vector<ScaleSummary> multiscale_summary(std::span<const GeoRecord> points,
                                             std::span<const ingest::PolygonLayer> layers,
                                             std::size_t workers);

// "key<TAB>count[<TAB>comma-joined ids]" sorted by count desc then key asc.
std::string counts_to_tsv(const KeyedCounts& counts, bool with_ids = false);

std::string summary_to_tsv(std::span<const ScaleSummary> rows);

}  // namespace gazforge::jobs
