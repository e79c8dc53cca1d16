#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gazforge/ingest.hpp"
#include "gazforge/record.hpp"

namespace gazforge::bench {

struct BenchRow {
  std::string scenario;  // "sequential" (single-loop oracle) or "mapreduce"
  std::size_t n_points = 0;
  std::size_t n_polygons = 0;
  std::size_t workers = 1;
  double wall_ms = 0.0;
  double speedup = 1.0;  // sequential wall_ms / this wall_ms
  long max_rss_kb = 0;
};

struct BenchConfig {
  std::vector<std::size_t> point_sizes{10000, 100000, 1000000};
  std::vector<std::size_t> polygon_sizes{64, 1024};
  std::vector<std::size_t> workers{1, 2, 4};
  std::size_t repeats = 3;  // median wall time over repeats
  std::uint64_t seed = 42;
};

// Uniform random points in a fixed bbox joined against a regular k x k grid
// (k = round(sqrt(n_polygons))). Every timed run's counts are checked
// against the sequential single-loop oracle; a mismatch throws.
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

// Sequential reference join used as the timing baseline and correctness
// check: one loop over points, inner loop over polygon parts.
mapreduce::KeyedCounts sequential_join_oracle(std::span<const GeoRecord> points,
                                              const ingest::PolygonLayer& layer);

// Header: scenario,n_points,n_polygons,workers,wall_ms,speedup
std::string to_csv(std::span<const BenchRow> rows);

std::string human_summary(std::span<const BenchRow> rows);

}  // namespace gazforge::bench
