#include "gazforge/mapreduce.hpp"

#include <algorithm>
#include <mutex>

namespace gazforge::mapreduce {

KeyCount sum_reducer(const std::string&, const std::vector<EmValue>& values) {
  KeyCount out;
  for (const auto& v : values) {
    out.count += v.value;
    if (v.id) out.ids.push_back(*v.id);
  }
  return out;
}

namespace detail {

void run_workers(std::size_t workers, std::size_t n_tasks,
                 const std::function<void(std::size_t)>& task) {
  if (n_tasks == 0) return;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto body = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_tasks) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::size_t n_threads = std::min(workers, n_tasks);
  if (n_threads <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

KeyedCounts shuffle_and_reduce(std::vector<PartitionOutput>& outputs, const Reducer& reducer,
                               std::size_t workers) {
  // Merge per-partition groups in block order so every key sees its values
  // in (block_id, in-block) order.
  std::map<std::string, std::vector<EmValue>> grouped;
  for (auto& out : outputs) {
    for (auto& [key, values] : out.groups) {
      auto& dst = grouped[key];
      dst.insert(dst.end(), std::make_move_iterator(values.begin()),
                 std::make_move_iterator(values.end()));
    }
    out.groups.clear();
  }

  std::vector<const std::string*> keys;
  keys.reserve(grouped.size());
  for (const auto& [key, values] : grouped) keys.push_back(&key);

  std::vector<KeyCount> reduced(keys.size());
  run_workers(workers, keys.size(), [&](std::size_t i) {
    reduced[i] = reducer(*keys[i], grouped.at(*keys[i]));
  });

  KeyedCounts result;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    result.entries.emplace(*keys[i], std::move(reduced[i]));
  }
  return result;
}

}  // namespace detail

}  // namespace gazforge::mapreduce
