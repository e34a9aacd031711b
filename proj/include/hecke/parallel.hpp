#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hecke {

namespace detail {
inline thread_local bool inside_parallel_region = false;
}

/// Number of worker threads used by the parallel loops (HECKE_THREADS overrides).
unsigned worker_count();

/// Runs fn(i) for i in [0, n) on worker threads. Each index is handled exactly
/// once; callers write results into per-index slots, so the outcome does not
/// depend on scheduling. The first exception thrown is rethrown. Nested calls
/// run serially on the calling worker.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1 || detail::inside_parallel_region) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      detail::inside_parallel_region = true;
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hecke
