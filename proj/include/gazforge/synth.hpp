#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gazforge/record.hpp"

namespace gazforge::synth {

// Identifier recorded in output metadata: raw draws come from mt19937_64 and
// every distribution transform (uniform double, Box-Muller normal, CDF-table
// Zipf) is implemented here, so byte-identical output depends only on this
// code, not on the standard library's distribution internals.
inline constexpr const char* kRngId = "mt19937_64/boxmuller/zipf-cdf v1";

struct PlaceSpec {
  std::string name;
  PointLL center;
  double spread_m = 0.0;  // > 0
  std::size_t n_points = 0;
  std::vector<std::string> vocab;
};

struct SyntheticSpec {
  std::vector<PlaceSpec> places;
  std::size_t n_noise = 0;
  std::size_t n_users = 1;
  double zipf_s = 1.0;  // > 0
  std::uint64_t seed = 0;

  // Throws std::invalid_argument listing every violated field.
  void validate() const;
};

// Flat key/value text: global keys first, then one block per place, blocks
// separated by blank lines (format documented in the README).
SyntheticSpec parse_spec(const std::string& text);

// Deterministic for a fixed spec: place records first (Gaussian around each
// center, tags = place-name tokens + vocab samples), then uniform noise in
// the covering bbox; user ids Zipf-distributed over n_users.
std::vector<GeoRecord> generate_synthetic(const SyntheticSpec& spec);

// Deterministic samplers shared with tests and the bench harness.
double next_double(std::mt19937_64& rng);                    // [0, 1)
double next_normal(std::mt19937_64& rng);                    // standard normal
struct ZipfSampler {
  ZipfSampler(std::size_t n, double s);
  std::size_t sample(std::mt19937_64& rng) const;  // rank in [1, n]
 private:
  std::vector<double> cdf_;
};

}  // namespace gazforge::synth
