#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ivg {

/// Worker count: IVG_THREADS when set and positive, otherwise the hardware
/// concurrency (at least 1).
inline int thread_count() {
  if (const char* env = std::getenv("IVG_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, n) across worker threads in contiguous chunks.
/// fn must be pure with respect to shared state except its own output slot;
/// results must be reduced deterministically by the caller afterwards.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace ivg
