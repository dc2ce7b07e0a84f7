#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kpc {

/// Runs fn(i) for i in [0, count), spread over hardware threads. Evaluations
/// must be pure up to writing their own output slot; the caller's result
/// vector indexed by i is the only collection point, so no locking is needed.
template <typename Fn>
void parallel_for_index(std::size_t count, Fn&& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers =
      count <= 1 ? 1 : std::min<std::size_t>(hw ? hw : 1, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace kpc
