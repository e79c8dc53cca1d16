#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gazforge/geometry.hpp"
#include "gazforge/record.hpp"

namespace gazforge::footprints {

// Distance-decay membership parameters. unit_scale divides the raw meter
// distance before the C/d^beta branch is evaluated; thresholds d1/d2 stay in
// meters. With the stock parameters (beta=1, C=5, d1=50m, d2=5000m) and
// unit_scale=1 the middle branch tops out at 0.1, so alpha cuts above 0.1
// collapse to the d1 disk; unit_scale=100 spreads the 0.5/0.8 cuts out to
// 1000m/625m.
struct FuzzyParams {
  double beta = 1.0;        // > 0
  double c = 5.0;           // > 0
  double d1 = 50.0;         // meters, >= 0
  double d2 = 5000.0;       // meters, > d1
  double unit_scale = 1.0;  // meters per distance unit, > 0

  void validate() const;
};

// 1 on [0, d1], clamp(C/(d/unit_scale)^beta) on (d1, d2), 0 on [d2, inf).
double fuzzy_membership(double d_m, const FuzzyParams& p);

struct ScoredRecord {
  GeoRecord record;
  double mu = 0.0;
};

struct AlphaCut {
  double alpha = 0.5;                 // in (0, 1]
  std::vector<ScoredRecord> members;  // every member has mu >= alpha
};

AlphaCut alpha_cut(std::span<const GeoRecord> records, const PointLL& center,
                   const FuzzyParams& p, double alpha);

struct insufficient_data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point entry: 2-sigma SDE over the matched points, SPs = points inside it,
// footprint = centroid of SPs. The 1-sigma centroid and both ellipses are
// reported alongside.
struct PointEntryResult {
  GazetteerEntry entry;
  geom::Ellipse sde_1s;
  geom::Ellipse sde_2s;
  PointLL centroid_1s;
  bool degenerate = false;  // all points coincided; plain-centroid fallback
};

PointEntryResult extract_point_entry(std::span<const GeoRecord> records, const std::string& name,
                                     const std::string& feature_type,
                                     bool sqrt2_correction = true);

// Line entry: optional polygon clip, duplicate coordinates collapsed to one
// vertex, vertices sorted by longitude (ties by latitude) and connected.
struct LineEntryResult {
  GazetteerEntry entry;
  std::size_t n_deduplicated = 0;  // records collapsed into an existing vertex
};

LineEntryResult extract_line_entry(std::span<const GeoRecord> records, const std::string& name,
                                   const std::string& feature_type,
                                   const std::optional<Polygon>& clip = std::nullopt);

enum class BoundaryKind { kMinBoundingRect, kConvexHull };

// Polygon entry: alpha cut about the centroid of all matched records,
// boundary = MBR or convex hull of the member coordinates. Member scores are
// kept for inspection.
struct PolygonEntryResult {
  GazetteerEntry entry;
  std::vector<ScoredRecord> members;
  PointLL center;
};

PolygonEntryResult extract_polygon_entry(std::span<const GeoRecord> records,
                                         const std::string& name,
                                         const std::string& feature_type, const FuzzyParams& p,
                                         double alpha, BoundaryKind boundary);

// Records whose tag/title token stream contains the tokenized name as a
// contiguous subsequence.
std::vector<GeoRecord> match_by_name(std::span<const GeoRecord> records, const std::string& name);

}  // namespace gazforge::footprints
