#include "gazforge/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include <sys/resource.h>

#include "gazforge/geometry.hpp"
#include "gazforge/jobs.hpp"
#include "gazforge/synth.hpp"

namespace gazforge::bench {

namespace {

constexpr BBox kBenchBBox{-124.0, 25.0, -67.0, 49.0};

std::vector<GeoRecord> make_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GeoRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    GeoRecord r;
    r.photo_id = std::to_string(i + 1);
    r.user_id = "u1";
    r.lon = kBenchBBox.min_lon + synth::next_double(rng) * (kBenchBBox.max_lon - kBenchBBox.min_lon);
    r.lat = kBenchBBox.min_lat + synth::next_double(rng) * (kBenchBBox.max_lat - kBenchBBox.min_lat);
    out.push_back(std::move(r));
  }
  return out;
}

ingest::PolygonLayer make_grid(std::size_t n_polygons) {
  std::size_t k = std::max<std::size_t>(1, static_cast<std::size_t>(
      std::llround(std::sqrt(static_cast<double>(n_polygons)))));
  ingest::PolygonLayer layer;
  layer.name = "grid" + std::to_string(k * k);
  layer.key_field = "cell";
  double dx = (kBenchBBox.max_lon - kBenchBBox.min_lon) / static_cast<double>(k);
  double dy = (kBenchBBox.max_lat - kBenchBBox.min_lat) / static_cast<double>(k);
  for (std::size_t row = 0; row < k; ++row) {
    for (std::size_t col = 0; col < k; ++col) {
      double x0 = kBenchBBox.min_lon + col * dx;
      double y0 = kBenchBBox.min_lat + row * dy;
      ingest::PolygonFeature f;
      f.key = "c" + std::to_string(row * k + col);
      Polygon poly;
      poly.outer = {PointLL{x0, y0}, PointLL{x0 + dx, y0}, PointLL{x0 + dx, y0 + dy},
                    PointLL{x0, y0 + dy}, PointLL{x0, y0}};
      f.parts.push_back(std::move(poly));
      f.attributes["cell"] = f.key;
      layer.features.push_back(std::move(f));
    }
  }
  return layer;
}

long max_rss_kb() {
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return ru.ru_maxrss;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

mapreduce::KeyedCounts sequential_join_oracle(std::span<const GeoRecord> points,
                                              const ingest::PolygonLayer& layer) {
  struct Part {
    std::string key;
    const Polygon* polygon;
    BBox bbox;
  };
  std::vector<Part> parts;
  for (const auto& jp : layer.join_parts()) {
    parts.push_back(Part{jp.key, jp.polygon, BBox::of(jp.polygon->outer)});
  }
  mapreduce::KeyedCounts out;
  for (const auto& rec : points) {
    PointLL p = rec.point();
    for (const auto& part : parts) {
      if (!part.bbox.contains(p)) continue;
      if (geom::point_in_ring(p, part.polygon->outer)) ++out.entries[part.key].count;
    }
  }
  return out;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.repeats == 0) throw std::invalid_argument("run_bench: repeats must be >= 1");
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;

  for (std::size_t np : cfg.point_sizes) {
    auto points = make_points(np, cfg.seed);
    for (std::size_t ng : cfg.polygon_sizes) {
      auto layer = make_grid(ng);
      std::size_t actual_ng = layer.features.size();

      // Sequential baseline: the single-loop oracle.
      mapreduce::KeyedCounts expected;
      std::vector<double> seq_times;
      for (std::size_t r = 0; r < cfg.repeats; ++r) {
        auto t0 = clock::now();
        expected = sequential_join_oracle(points, layer);
        auto t1 = clock::now();
        seq_times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      }
      double seq_ms = median(seq_times);
      rows.push_back(BenchRow{"sequential", np, actual_ng, 1, seq_ms, 1.0, max_rss_kb()});

      for (std::size_t w : cfg.workers) {
        std::vector<double> times;
        for (std::size_t r = 0; r < cfg.repeats; ++r) {
          auto t0 = clock::now();
          auto counts = jobs::spatial_join_job(points, layer, false, w);
          auto t1 = clock::now();
          times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
          if (counts.entries != expected.entries)
            throw std::runtime_error("bench: parallel join disagrees with the sequential oracle");
        }
        double ms = median(times);
        rows.push_back(BenchRow{"mapreduce", np, actual_ng, w, ms, seq_ms / ms, max_rss_kb()});
      }
    }
  }
  return rows;
}

std::string to_csv(std::span<const BenchRow> rows) {
  std::ostringstream out;
  out << "scenario,n_points,n_polygons,workers,wall_ms,speedup\n";
  out.precision(6);
  out << std::fixed;
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.n_points << ',' << r.n_polygons << ',' << r.workers << ','
        << r.wall_ms << ',' << r.speedup << '\n';
  }
  return out.str();
}

std::string human_summary(std::span<const BenchRow> rows) {
  std::ostringstream out;
  out.precision(2);
  out << std::fixed;
  const BenchRow* largest = nullptr;
  for (const auto& r : rows) {
    if (r.scenario != "mapreduce") continue;
    if (!largest || r.n_points * r.n_polygons > largest->n_points * largest->n_polygons ||
        (r.n_points == largest->n_points && r.n_polygons == largest->n_polygons &&
         r.speedup > largest->speedup)) {
      largest = &r;
    }
  }
  for (const auto& r : rows) {
    out << r.scenario << " points=" << r.n_points << " polygons=" << r.n_polygons
        << " workers=" << r.workers << ": " << r.wall_ms << " ms (speedup " << r.speedup
        << "x, max rss " << r.max_rss_kb << " kB)\n";
  }
  if (largest) {
    out << "largest cell: " << largest->n_points << " points x " << largest->n_polygons
        << " polygons, workers=" << largest->workers << " -> speedup " << largest->speedup
        << "x over the sequential single-loop baseline\n";
  }
  return out.str();
}

}  // namespace gazforge::bench
