#pragma once
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace kdt {

// Worker count: KDT_WORKERS when set, else the hardware default.
inline int worker_count() {
  if (const char* env = std::getenv("KDT_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Run fn(worker, begin, end) over a contiguous index partition.  Results must
// be written to per-worker slots so the merge stays deterministic.
inline void parallel_ranges(std::size_t total,
                            const std::function<void(int, std::size_t, std::size_t)>& fn) {
  int w = worker_count();
  if (w <= 1 || total < 64) {
    fn(0, 0, total);
    return;
  }
  std::vector<std::thread> threads;
  std::size_t chunk = (total + static_cast<std::size_t>(w) - 1) / static_cast<std::size_t>(w);
  for (int i = 0; i < w; ++i) {
    std::size_t b = static_cast<std::size_t>(i) * chunk;
    std::size_t e = std::min(total, b + chunk);
    if (b >= e) break;
    threads.emplace_back(fn, i, b, e);
  }
  for (auto& t : threads) t.join();
}

}  // namespace kdt
