#pragma once
// Deterministic index-sliced parallelism for embarrassingly parallel
// replicate loops. Work item i always computes the same result regardless of
// the thread count; callers write into slot i of a preallocated array, so
// aggregation order never depends on scheduling.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bostat {

inline unsigned resolve_threads(unsigned requested, std::size_t count) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (count < t) t = static_cast<unsigned>(count ? count : 1);
  return t;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Contiguous index chunks per worker; the first exception, if
// any, is rethrown on the calling thread after all workers join.
template <typename Fn>
void parallel_for_index(std::size_t count, unsigned threads, Fn&& fn) {
  if (count == 0) return;
  const unsigned t = resolve_threads(threads, count);
  if (t <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  const std::size_t chunk = (count + t - 1) / t;
  std::vector<std::thread> workers;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  workers.reserve(t);
  for (unsigned w = 0; w < t; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& worker : workers) worker.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace bostat
