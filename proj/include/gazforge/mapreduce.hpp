#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gazforge::mapreduce {

inline constexpr std::size_t kDefaultBlockSize = 10000;  // records per block

struct KeyCount {
  std::int64_t count = 0;
  std::vector<std::string> ids;
};

// Output of a job: key -> aggregated count (plus optional id list).
struct KeyedCounts {
  std::map<std::string, KeyCount> entries;

  std::int64_t total() const {
    std::int64_t t = 0;
    for (const auto& [k, v] : entries) t += v.count;
    return t;
  }
};

struct EmValue {
  std::int64_t value = 1;
  std::optional<std::string> id;
};

// Reducer folds the full value list of one key, values in (block_id,
// in-block) order. Must be commutative-associative for the engine contract,
// though the engine itself never reorders.
using Reducer = std::function<KeyCount(const std::string& key, const std::vector<EmValue>& values)>;

KeyCount sum_reducer(const std::string& key, const std::vector<EmValue>& values);

struct JobError : std::runtime_error {
  std::size_t block_id;
  JobError(std::size_t block, const std::string& what)
      : std::runtime_error("block " + std::to_string(block) + ": " + what), block_id(block) {}
};

template <class Record>
struct Partition {
  std::size_t block_id = 0;
  std::span<const Record> records;
};

// ceil(n/block_size) partitions; all but possibly the last hold exactly
// block_size records; concatenation reproduces input order.
template <class Record>
std::vector<Partition<Record>> split(std::span<const Record> records, std::size_t block_size) {
  if (block_size == 0) throw std::invalid_argument("split: block_size must be >= 1");
  std::vector<Partition<Record>> parts;
  std::size_t n = records.size();
  parts.reserve((n + block_size - 1) / block_size);
  for (std::size_t off = 0; off < n; off += block_size) {
    std::size_t len = std::min(block_size, n - off);
    parts.push_back(Partition<Record>{parts.size(), records.subspan(off, len)});
  }
  return parts;
}

namespace detail {

// Per-partition map output: first-seen key order does not matter because the
// shuffle merges through a sorted map; value order within a key is emission
// order, which is what the contract pins.
struct PartitionOutput {
  std::map<std::string, std::vector<EmValue>> groups;
};

void run_workers(std::size_t workers, std::size_t n_tasks,
                 const std::function<void(std::size_t)>& task);

KeyedCounts shuffle_and_reduce(std::vector<PartitionOutput>& outputs, const Reducer& reducer,
                               std::size_t workers);

}  // namespace detail

// Runs mapper over every record on a pool of exactly `workers` threads,
// groups emissions by key, reduces each key once over its full value list.
// Result is identical to the sequential map-then-reduce regardless of worker
// count. Mapper signature: mapper(const Record&, emit) with
// emit(key, value) or emit(key, value, id).
template <class Record, class Mapper>
KeyedCounts run_job(std::span<const Record> records, Mapper&& mapper, const Reducer& reducer,
                    std::size_t workers, std::size_t block_size = kDefaultBlockSize) {
  if (workers == 0) throw std::invalid_argument("run_job: workers must be >= 1");
  auto partitions = split(records, block_size);
  std::vector<detail::PartitionOutput> outputs(partitions.size());

  detail::run_workers(workers, partitions.size(), [&](std::size_t i) {
    const auto& part = partitions[i];
    auto& out = outputs[i];
    auto emit = [&out](const std::string& key, std::int64_t value,
                       std::optional<std::string> id = std::nullopt) {
      out.groups[key].push_back(EmValue{value, std::move(id)});
    };
    try {
      for (const Record& rec : part.records) mapper(rec, emit);
    } catch (const std::exception& e) {
      throw JobError(part.block_id, e.what());
    }
  });

  return detail::shuffle_and_reduce(outputs, reducer, workers);
}

}  // namespace gazforge::mapreduce
