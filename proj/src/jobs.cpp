#include "gazforge/jobs.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "gazforge/geometry.hpp"
#include "gazforge/tokenize.hpp"

namespace gazforge::jobs {

using mapreduce::EmValue;
using mapreduce::sum_reducer;

FeatureTypeLexicon FeatureTypeLexicon::default_lexicon() {
  FeatureTypeLexicon lex;
  lex.entries = {
      {"parks", {"park", "公园", "parc", "parquet"}},
      {"schools", {"school", "university"}},
      {"museums", {"museum"}},
      {"coffee shops", {"coffee", "cafe", "coffeehouse", "coffeebar", "starbucks"}},
      {"streets", {"street", "road", "blvd", "freeway", "highway"}},
      {"rivers", {"river", "watershed"}},
  };
  return lex;
}

FeatureTypeLexicon FeatureTypeLexicon::parse(const std::string& text) {
  FeatureTypeLexicon lex;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("lexicon: expected 'type: kw1, kw2': " + line);
    std::string type = line.substr(0, colon);
    while (!type.empty() && (type.back() == ' ' || type.back() == '\t')) type.pop_back();
    std::vector<std::string> keywords;
    for (const auto& kw : tokenize(line.substr(colon + 1))) keywords.push_back(kw);
    if (type.empty() || keywords.empty())
      throw std::invalid_argument("lexicon: empty type or keyword list: " + line);
    lex.entries[type] = std::move(keywords);
  }
  return lex;
}

KeyedCounts cooccurrence_job(std::span<const GeoRecord> records, const std::string& place_name,
                             std::size_t workers, CooccurrenceMode mode,
                             std::size_t block_size) {
  auto place_tokens = tokenize(place_name);
  if (place_tokens.empty())
    throw std::invalid_argument("cooccurrence_job: place name must be non-empty");
  std::unordered_set<std::string> place_set(place_tokens.begin(), place_tokens.end());
  bool exclude = mode == CooccurrenceMode::kExcludePlaceTokens;

  auto mapper = [&](const GeoRecord& rec, auto&& emit) {
    auto toks = match_tokens(rec);
    if (!contains_subsequence(toks, place_tokens)) return;
    std::sort(toks.begin(), toks.end());
    toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
    for (const auto& t : toks) {
      if (exclude && place_set.count(t)) continue;
      emit(t, 1);
    }
  };
  return mapreduce::run_job(records, mapper, sum_reducer, workers, block_size);
}

std::vector<TagCount> rank_tags(const KeyedCounts& counts, std::size_t k) {
  if (k == 0) throw std::invalid_argument("rank_tags: k must be >= 1");
  std::vector<TagCount> all;
  all.reserve(counts.entries.size());
  for (const auto& [token, kc] : counts.entries) all.emplace_back(token, kc.count);
  std::sort(all.begin(), all.end(), [](const TagCount& a, const TagCount& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

namespace {

struct IndexedPart {
  std::string key;
  const Polygon* polygon;
  BBox bbox;
};

}  // namespace

KeyedCounts spatial_join_job(std::span<const GeoRecord> points, const ingest::PolygonLayer& layer,
                             bool collect_ids, std::size_t workers, std::size_t block_size) {
  if (layer.features.empty())
    throw std::invalid_argument("spatial_join_job: layer must be non-empty");
  std::vector<IndexedPart> parts;
  for (const auto& jp : layer.join_parts()) {
    parts.push_back(IndexedPart{jp.key, jp.polygon, BBox::of(jp.polygon->outer)});
  }

  auto mapper = [&](const GeoRecord& rec, auto&& emit) {
    PointLL p = rec.point();
    for (const auto& part : parts) {
      if (!part.bbox.contains(p)) continue;
      if (geom::point_in_ring(p, part.polygon->outer)) {
        if (collect_ids) {
          emit(part.key, 1, rec.photo_id);
        } else {
          emit(part.key, 1);
        }
      }
    }
  };
  auto result = mapreduce::run_job(points, mapper, sum_reducer, workers, block_size);
  if (collect_ids) {
    for (auto& [key, kc] : result.entries) std::sort(kc.ids.begin(), kc.ids.end());
  }
  return result;
}

namespace {

std::string parent_key(const std::string& key) {
  auto hash = key.rfind('#');
  if (hash == std::string::npos) return key;
  // Only strip a suffix that is entirely digits.
  for (std::size_t i = hash + 1; i < key.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(key[i]))) return key;
  }
  return key.substr(0, hash);
}

}  // namespace

std::vector<JoinedFeature> join_back(const ingest::PolygonLayer& layer,
                                     const KeyedCounts& counts, bool with_ids) {
  std::map<std::string, mapreduce::KeyCount> merged;
  for (const auto& [key, kc] : counts.entries) {
    std::string parent = parent_key(key);
    if (!layer.find(parent) && !layer.find(key)) {
      throw std::invalid_argument("join_back: count key '" + key + "' matches no layer feature");
    }
    const std::string& target = layer.find(parent) ? parent : key;
    auto& dst = merged[target];
    dst.count += kc.count;
    dst.ids.insert(dst.ids.end(), kc.ids.begin(), kc.ids.end());
  }

  std::vector<JoinedFeature> out;
  out.reserve(layer.features.size());
  for (const auto& f : layer.features) {
    JoinedFeature jf;
    jf.key = f.key;
    if (f.parts.size() == 1) {
      jf.geometry = f.parts[0];
    } else {
      MultiPolygon mp;
      mp.parts = f.parts;
      jf.geometry = std::move(mp);
    }
    jf.attributes = f.attributes;
    auto it = merged.find(f.key);
    std::int64_t count = it == merged.end() ? 0 : it->second.count;
    jf.attributes["count"] = count;
    if (with_ids) {
      std::vector<std::string> ids;
      if (it != merged.end()) {
        ids = it->second.ids;
        std::sort(ids.begin(), ids.end());
      }
      jf.attributes["point_ids"] = ids;
    }
    out.push_back(std::move(jf));
  }
  return out;
}

std::vector<GeoRecord> extract_by_type(std::span<const GeoRecord> records,
                                       const std::string& type_name,
                                       std::span<const std::string> keywords) {
  if (keywords.empty())
    throw std::invalid_argument("extract_by_type: '" + type_name + "' has no keywords");
  std::unordered_set<std::string> kw(keywords.begin(), keywords.end());
  std::vector<GeoRecord> out;
  for (const auto& rec : records) {
    for (const auto& tok : match_tokens(rec)) {
      if (kw.count(tok)) {
        out.push_back(rec);
        break;
      }
    }
  }
  return out;
}

std::vector<ScaleSummary> multiscale_summary(std::span<const GeoRecord> points,
                                             std::span<const ingest::PolygonLayer> layers,
                                             std::size_t workers) {
  std::vector<ScaleSummary> rows;
  for (const auto& layer : layers) {
    auto counts = spatial_join_job(points, layer, false, workers);
    auto joined = join_back(layer, counts);
    ScaleSummary row;
    row.layer = layer.name;
    for (const auto& jf : joined) {
      std::int64_t c = jf.attributes.at("count").get<std::int64_t>();
      row.joined += c;
      if (c > 0) ++row.units_hit;
    }
    row.mean_per_unit =
        row.units_hit == 0
            ? 0
            : std::llround(static_cast<double>(row.joined) / static_cast<double>(row.units_hit));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string counts_to_tsv(const KeyedCounts& counts, bool with_ids) {
  std::vector<std::pair<std::string, const mapreduce::KeyCount*>> rows;
  rows.reserve(counts.entries.size());
  for (const auto& [key, kc] : counts.entries) rows.emplace_back(key, &kc);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second->count != b.second->count ? a.second->count > b.second->count
                                              : a.first < b.first;
  });
  std::ostringstream out;
  for (const auto& [key, kc] : rows) {
    out << key << '\t' << kc->count;
    if (with_ids) {
      out << '\t';
      for (std::size_t i = 0; i < kc->ids.size(); ++i) {
        if (i) out << ',';
        out << kc->ids[i];
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string summary_to_tsv(std::span<const ScaleSummary> rows) {
  std::ostringstream out;
  out << "layer\tjoined\tunits_hit\tmean_per_unit\n";
  for (const auto& r : rows) {
    out << r.layer << '\t' << r.joined << '\t' << r.units_hit << '\t' << r.mean_per_unit << '\n';
  }
  return out.str();
}

}  // namespace gazforge::jobs
