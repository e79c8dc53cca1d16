#include "gazforge/trust.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace gazforge::trust {

double w_rank(std::int64_t n_i, std::int64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("w_rank: n_max must be >= 1");
  if (n_i < 0) throw std::invalid_argument("w_rank: n_i must be >= 0");
  if (n_i > n_max) throw std::invalid_argument("w_rank: n_i exceeds n_max");
  return std::log1p(static_cast<double>(n_i)) / std::log1p(static_cast<double>(n_max));
}

double reputation(std::int64_t n_reliable, std::int64_t n_total, double w) {
  if (n_total == 0) throw no_contributions_error("reputation: user has no contributions");
  if (n_reliable < 0 || n_reliable > n_total)
    throw std::invalid_argument("reputation: need 0 <= n_reliable <= n_total");
  return (static_cast<double>(n_reliable) / static_cast<double>(n_total)) * w;
}

bool is_reliable(const GeoRecord& rec, const ReliabilityContext& ctx) {
  if (!valid_lat(rec.lat) || !valid_lon(rec.lon)) return false;
  if (ctx.region && !ctx.region->contains(rec.point())) return false;
  if (ctx.ellipse && !geom::point_in_ellipse(rec.point(), *ctx.ellipse)) return false;
  return true;
}

namespace {

std::mutex g_registry_mu;
std::map<std::string, ReliabilityPredicate>& registry() {
  static std::map<std::string, ReliabilityPredicate> r = {{"default", is_reliable}};
  return r;
}

}  // namespace

void register_reliability_predicate(const std::string& name, ReliabilityPredicate pred) {
  std::lock_guard lock(g_registry_mu);
  registry()[name] = std::move(pred);
}

ReliabilityPredicate reliability_predicate(const std::string& name) {
  std::lock_guard lock(g_registry_mu);
  auto it = registry().find(name);
  if (it == registry().end())
    throw std::invalid_argument("unknown reliability predicate '" + name + "'");
  return it->second;
}

std::vector<TrustProfile> build_profiles(std::span<const GeoRecord> records,
                                         const ReliabilityContext& ctx,
                                         const ReliabilityPredicate& pred) {
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> by_user;  // total, reliable
  for (const auto& rec : records) {
    auto& [total, reliable] = by_user[rec.user_id];
    ++total;
    if (pred(rec, ctx)) ++reliable;
  }
  std::int64_t n_max = 1;
  for (const auto& [user, counts] : by_user) n_max = std::max(n_max, counts.first);

  std::vector<TrustProfile> out;
  out.reserve(by_user.size());
  for (const auto& [user, counts] : by_user) {
    TrustProfile p;
    p.user_id = user;
    p.n_total = counts.first;
    p.n_reliable = counts.second;
    p.w_rank = w_rank(p.n_total, n_max);
    p.reputation = reputation(p.n_reliable, p.n_total, p.w_rank);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const TrustProfile& a, const TrustProfile& b) {
    return a.n_total != b.n_total ? a.n_total > b.n_total : a.user_id < b.user_id;
  });
  return out;
}

FilterResult filter_entries(std::span<const GazetteerEntry> entries,
                            std::span<const TrustProfile> profiles, const TrustThresholds& t) {
  std::unordered_map<std::string, double> rep;
  rep.reserve(profiles.size());
  for (const auto& p : profiles) rep[p.user_id] = p.reputation;

  FilterResult result;
  for (const auto& entry : entries) {
    GazetteerEntry e = entry;
    e.trusted_contributors.clear();
    for (const auto& user : e.contributors) {
      auto it = rep.find(user);
      double r = it == rep.end() ? 0.0 : it->second;
      if (r >= t.min_reputation) e.trusted_contributors.insert(user);
    }
    std::vector<std::string> reasons;
    if (static_cast<std::int64_t>(e.trusted_contributors.size()) < t.min_contributors)
      reasons.push_back("min_contributors");
    if (static_cast<std::int64_t>(e.top_tags.size()) < t.min_tags)
      reasons.push_back("min_tags");
    if (reasons.empty()) {
      result.accepted.push_back(std::move(e));
    } else {
      result.rejected.push_back(FilterResult::Rejected{std::move(e), std::move(reasons)});
    }
  }
  return result;
}

ContributionDistribution contribution_distribution(std::span<const TrustProfile> profiles) {
  ContributionDistribution d;
  std::vector<std::int64_t> counts;
  counts.reserve(profiles.size());
  for (const auto& p : profiles) counts.push_back(p.n_total);
  std::sort(counts.rbegin(), counts.rend());

  std::int64_t gt10 = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    d.rank_counts.emplace_back(static_cast<std::int64_t>(i + 1), counts[i]);
    if (counts[i] > 10) ++gt10;
  }
  d.gt10_fraction = counts.empty() ? 0.0 : static_cast<double>(gt10) / counts.size();

  if (counts.size() >= 2) {
    // Least squares of log(count) on log(rank); zero counts cannot occur
    // (profiles exist only for users with records).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = counts.size();
    for (std::size_t i = 0; i < n; ++i) {
      double x = std::log(static_cast<double>(i + 1));
      double y = std::log(static_cast<double>(counts[i]));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom != 0) d.slope = (n * sxy - sx * sy) / denom;
  }
  return d;
}

std::string profiles_to_tsv(std::span<const TrustProfile> profiles) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& p : profiles) {
    out << p.user_id << '\t' << p.n_total << '\t' << p.n_reliable << '\t' << p.w_rank << '\t'
        << p.reputation << '\n';
  }
  return out.str();
}

std::string distribution_to_tsv(const ContributionDistribution& d) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [rank, count] : d.rank_counts) out << rank << '\t' << count << '\n';
  out << "# slope=";
  if (d.slope) out << *d.slope;
  else out << "undefined";
  out << " gt10_fraction=" << d.gt10_fraction << '\n';
  return out.str();
}

std::vector<GeoRecord> filter_time_window(std::span<const GeoRecord> records,
                                          std::optional<std::int64_t> since_epoch,
                                          std::optional<std::int64_t> until_epoch) {
  if (!since_epoch && !until_epoch) return {records.begin(), records.end()};
  std::vector<GeoRecord> out;
  for (const auto& rec : records) {
    auto when = parse_timestamp(rec.taken_time);
    if (!when) continue;  // unparseable timestamps sit outside any window
    if (since_epoch && *when < *since_epoch) continue;
    if (until_epoch && *when > *until_epoch) continue;
    out.push_back(rec);
  }
  return out;
}

}  // namespace gazforge::trust
