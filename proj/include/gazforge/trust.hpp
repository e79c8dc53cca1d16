#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gazforge/geometry.hpp"
#include "gazforge/record.hpp"

namespace gazforge::trust {

struct TrustProfile {
  std::string user_id;
  std::int64_t n_total = 0;     // photos uploaded
  std::int64_t n_reliable = 0;  // photos passing the reliability predicate
  double w_rank = 0.0;          // in (0, 1]
  double reputation = 0.0;      // (n_reliable / n_total) * w_rank
};

struct TrustThresholds {
  std::int64_t min_contributors = 15;
  std::int64_t min_tags = 10;
  double min_reputation = 0.0;  // 0 = off
};

// log(1 + n_i) / log(1 + n_max): 0 at n_i = 0, 1 at n_i = n_max, strictly
// increasing. Throws std::invalid_argument when n_i > n_max or n_max < 1.
double w_rank(std::int64_t n_i, std::int64_t n_max);

// (n_reliable / n_total) * w. Throws no_contributions_error when n_total is
// zero, std::invalid_argument when n_reliable > n_total.
double reputation(std::int64_t n_reliable, std::int64_t n_total, double w);

struct no_contributions_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReliabilityContext {
  std::optional<BBox> region;             // record must fall inside when set
  std::optional<geom::Ellipse> ellipse;   // entry 2-sigma SDE when available
};

using ReliabilityPredicate = std::function<bool(const GeoRecord&, const ReliabilityContext&)>;

// Default predicate: coordinates in valid ranges, inside the region bbox
// when given, inside the entry ellipse when given.
bool is_reliable(const GeoRecord& rec, const ReliabilityContext& ctx);

// Named predicate registry; "default" is pre-registered.
void register_reliability_predicate(const std::string& name, ReliabilityPredicate pred);
ReliabilityPredicate reliability_predicate(const std::string& name);

// One profile per distinct user, n_max = max n_total across users, sorted by
// n_total descending then user_id ascending.
std::vector<TrustProfile> build_profiles(std::span<const GeoRecord> records,
                                         const ReliabilityContext& ctx,
                                         const ReliabilityPredicate& pred = is_reliable);

struct FilterResult {
  std::vector<GazetteerEntry> accepted;
  struct Rejected {
    GazetteerEntry entry;
    std::vector<std::string> reasons;  // failed criterion names
  };
  std::vector<Rejected> rejected;
};

// An entry passes when it has at least min_contributors trusted contributors
// (reputation >= min_reputation; contributors without a profile score 0) and
// at least min_tags distinct top tags. trusted_contributors is recomputed on
// the returned entries.
FilterResult filter_entries(std::span<const GazetteerEntry> entries,
                            std::span<const TrustProfile> profiles, const TrustThresholds& t);

struct ContributionDistribution {
  std::vector<std::pair<std::int64_t, std::int64_t>> rank_counts;  // rank (1-based) -> n_total
  std::optional<double> slope;  // least-squares log(count) vs log(rank); nullopt below 2 profiles
  double gt10_fraction = 0.0;   // users with n_total > 10
};

ContributionDistribution contribution_distribution(std::span<const TrustProfile> profiles);

// "user_id<TAB>n_total<TAB>n_reliable<TAB>w_rank<TAB>reputation"
std::string profiles_to_tsv(std::span<const TrustProfile> profiles);

// "rank<TAB>count" rows; trailing "# slope=<v> gt10_fraction=<v>" line.
std::string distribution_to_tsv(const ContributionDistribution& d);

// Keeps records whose parsed taken_time falls in [since, until]; records
// with unparseable timestamps are excluded once a bound is active.
std::vector<GeoRecord> filter_time_window(std::span<const GeoRecord> records,
                                          std::optional<std::int64_t> since_epoch,
                                          std::optional<std::int64_t> until_epoch);

}  // namespace gazforge::trust
