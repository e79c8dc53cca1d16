#include "gazforge/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gazforge/geometry.hpp"
#include "gazforge/tokenize.hpp"

namespace gazforge::synth {

double next_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double next_normal(std::mt19937_64& rng) {
  // Box-Muller, one value per call; the discarded sine keeps the draw count
  // per record fixed and the stream easy to reason about.
  double u1 = next_double(rng);
  double u2 = next_double(rng);
  while (u1 == 0.0) u1 = next_double(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ZipfSampler::ZipfSampler(std::size_t n, double s) {
  if (n == 0) throw std::invalid_argument("ZipfSampler: n must be >= 1");
  if (s <= 0) throw std::invalid_argument("ZipfSampler: s must be > 0");
  cdf_.resize(n);
  double acc = 0;
  for (std::size_t r = 1; r <= n; ++r) {
    acc += 1.0 / std::pow(static_cast<double>(r), s);
    cdf_[r - 1] = acc;
  }
  for (double& v : cdf_) v /= acc;
}

std::size_t ZipfSampler::sample(std::mt19937_64& rng) const {
  double u = next_double(rng);
  auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<std::size_t>(it - cdf_.begin()) + 1;
}

void SyntheticSpec::validate() const {
  std::vector<std::string> bad;
  if (zipf_s <= 0) bad.push_back("zipf_s must be > 0");
  if (n_users == 0) bad.push_back("n_users must be >= 1");
  for (std::size_t i = 0; i < places.size(); ++i) {
    const auto& p = places[i];
    std::string tag = "places[" + std::to_string(i) + "]";
    if (p.name.empty()) bad.push_back(tag + ".name must be non-empty");
    if (p.spread_m <= 0) bad.push_back(tag + ".spread_m must be > 0");
    if (!valid_lat(p.center.lat) || !valid_lon(p.center.lon))
      bad.push_back(tag + ".center out of range");
  }
  if (!bad.empty()) {
    std::string msg = "invalid synthetic spec:";
    for (const auto& b : bad) msg += "\n  - " + b;
    throw std::invalid_argument(msg);
  }
}

namespace {

const std::vector<std::string>& noise_vocab() {
  static const std::vector<std::string> v = {"travel", "photo",  "trip",     "usa",
                                             "nature", "city",   "summer",   "vacation"};
  return v;
}

// Default covering bbox when the spec has noise but no places: the
// contiguous-US extent.
constexpr BBox kDefaultBBox{-124.8, 24.4, -66.9, 49.4};

std::string format_time(std::int64_t epoch) {
  // M/D/YYYY H:MM, the TSV timestamp style.
  std::int64_t days = epoch / 86400;
  std::int64_t rem = epoch % 86400;
  // Civil date from days (inverse of days_from_civil).
  std::int64_t z = days + 719468;
  std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  unsigned doe = static_cast<unsigned>(z - era * 146097);
  unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  unsigned mp = (5 * doy + 2) / 153;
  unsigned d = doy - (153 * mp + 2) / 5 + 1;
  unsigned m = mp + (mp < 10 ? 3 : -9);
  y += (m <= 2);
  std::ostringstream out;
  out << m << '/' << d << '/' << y << ' ' << (rem / 3600) << ':';
  std::int64_t mi = (rem % 3600) / 60;
  if (mi < 10) out << '0';
  out << mi;
  return out.str();
}

constexpr std::int64_t kTimeBase = 1293840000;  // 2011-01-01 00:00 UTC
constexpr std::int64_t kTimeStep = 137;

}  // namespace

std::vector<GeoRecord> generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  ZipfSampler zipf(spec.n_users, spec.zipf_s);

  std::vector<GeoRecord> out;
  std::size_t total = spec.n_noise;
  for (const auto& p : spec.places) total += p.n_points;
  out.reserve(total);

  std::uint64_t next_photo = 10000001;
  std::size_t rec_index = 0;
  auto stamp = [&rec_index](GeoRecord& r) {
    std::int64_t taken = kTimeBase + static_cast<std::int64_t>(rec_index) * kTimeStep;
    r.taken_time = format_time(taken);
    r.uploaded_time = format_time(taken + 2 * 86400);
    ++rec_index;
  };

  BBox cover{1e30, 1e30, -1e30, -1e30};
  bool have_cover = false;

  for (const auto& place : spec.places) {
    auto name_tokens = tokenize(place.name);
    double dlat = place.spread_m / geom::kMetersPerDegLat;
    double dlon = place.spread_m /
                  (geom::kMetersPerDegLat * std::cos(place.center.lat * std::numbers::pi / 180.0));
    cover.expand(PointLL{place.center.lon - 10 * dlon, place.center.lat - 10 * dlat});
    cover.expand(PointLL{place.center.lon + 10 * dlon, place.center.lat + 10 * dlat});
    have_cover = true;

    for (std::size_t i = 0; i < place.n_points; ++i) {
      GeoRecord r;
      r.photo_id = std::to_string(next_photo++);
      r.title = place.name;
      r.lon = place.center.lon + next_normal(rng) * dlon;
      r.lat = place.center.lat + next_normal(rng) * dlat;
      r.tags = place.name.empty() ? std::vector<std::string>{} : std::vector<std::string>{place.name};
      if (!place.vocab.empty()) {
        std::size_t n_extra = 2 + static_cast<std::size_t>(rng() % 3);
        for (std::size_t k = 0; k < n_extra; ++k) {
          const auto& tag = place.vocab[rng() % place.vocab.size()];
          if (std::find(r.tags.begin(), r.tags.end(), tag) == r.tags.end()) r.tags.push_back(tag);
        }
      }
      r.user_id = "u" + std::to_string(zipf.sample(rng));
      stamp(r);
      out.push_back(std::move(r));
    }
  }

  if (!have_cover) cover = kDefaultBBox;
  for (std::size_t i = 0; i < spec.n_noise; ++i) {
    GeoRecord r;
    r.photo_id = std::to_string(next_photo++);
    r.title = "IMG_" + std::to_string(i);
    r.lon = cover.min_lon + next_double(rng) * (cover.max_lon - cover.min_lon);
    r.lat = cover.min_lat + next_double(rng) * (cover.max_lat - cover.min_lat);
    std::size_t n_tags = 1 + static_cast<std::size_t>(rng() % 3);
    for (std::size_t k = 0; k < n_tags; ++k) {
      const auto& tag = noise_vocab()[rng() % noise_vocab().size()];
      if (std::find(r.tags.begin(), r.tags.end(), tag) == r.tags.end()) r.tags.push_back(tag);
    }
    r.user_id = "u" + std::to_string(zipf.sample(rng));
    stamp(r);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

double to_double_or_throw(const std::string& v, const std::string& key) {
  double out;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("spec: bad number for '" + key + "': " + v);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

SyntheticSpec parse_spec(const std::string& text) {
  SyntheticSpec spec;
  std::istringstream in(text);
  std::string line;
  std::vector<std::map<std::string, std::string>> blocks(1);
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) {
      if (!blocks.back().empty()) blocks.emplace_back();
      continue;
    }
    if (t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("spec: expected 'key = value': " + t);
    blocks.back()[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  if (!blocks.empty() && blocks.back().empty()) blocks.pop_back();
  if (blocks.empty()) throw std::invalid_argument("spec: empty file");

  // First block: global keys. Remaining blocks: one place each.
  for (const auto& [k, v] : blocks[0]) {
    if (k == "seed") spec.seed = std::stoull(v);
    else if (k == "n_users") spec.n_users = std::stoull(v);
    else if (k == "n_noise") spec.n_noise = std::stoull(v);
    else if (k == "zipf_s") spec.zipf_s = to_double_or_throw(v, k);
    else throw std::invalid_argument("spec: unknown global key '" + k + "'");
  }
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    PlaceSpec p;
    for (const auto& [k, v] : blocks[b]) {
      if (k == "name") p.name = v;
      else if (k == "center") {
        auto comma = v.find(',');
        if (comma == std::string::npos)
          throw std::invalid_argument("spec: center must be 'lon, lat': " + v);
        p.center.lon = to_double_or_throw(trim(v.substr(0, comma)), k);
        p.center.lat = to_double_or_throw(trim(v.substr(comma + 1)), k);
      } else if (k == "spread_m") p.spread_m = to_double_or_throw(v, k);
      else if (k == "n_points") p.n_points = std::stoull(v);
      else if (k == "vocab") {
        std::istringstream vs(v);
        std::string item;
        while (std::getline(vs, item, ',')) {
          std::string w = trim(item);
          if (!w.empty()) p.vocab.push_back(w);
        }
      } else {
        throw std::invalid_argument("spec: unknown place key '" + k + "'");
      }
    }
    spec.places.push_back(std::move(p));
  }
  spec.validate();
  return spec;
}

}  // namespace gazforge::synth
