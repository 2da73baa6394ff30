#ifndef CCGEO_SUPPORT_PARALLEL_HPP
#define CCGEO_SUPPORT_PARALLEL_HPP

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace ccgeo {

// Global worker cap, set once by the CLI --jobs flag.
int& worker_cap();

// Runs fn(i) for i in [0, count). Work items must be independent; results are
// written by index so the outcome does not depend on scheduling.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  int jobs = worker_cap() > 0 ? worker_cap() : (hw > 0 ? hw : 1);
  if (jobs > static_cast<int>(count)) jobs = static_cast<int>(count);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace ccgeo

#endif
