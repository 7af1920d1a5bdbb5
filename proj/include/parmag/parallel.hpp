#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace parmag {

// Runs fn(k) for k in [0, count) on up to `workers` threads.  Indices are
// claimed through an atomic counter and each task writes only to its own
// output slot, so the aggregate result is bit-identical for any worker
// count.  fn must not throw; callers convert per-point failures into
// sentinel values instead.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  const std::size_t n_threads =
      std::min<std::size_t>(workers, count);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t k = next.fetch_add(1); k < count;
           k = next.fetch_add(1))
        fn(k);
    });
  for (auto& th : pool) th.join();
}

}  // namespace parmag
