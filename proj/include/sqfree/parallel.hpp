#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "sqfree/types.hpp"

namespace sqfree {

/// SQFREE_WORKERS if set to a positive integer, else the hardware concurrency.
inline unsigned default_workers() {
  if (const char* env = std::getenv("SQFREE_WORKERS")) {
    try {
      u64 w = parse_u64(env);
      if (w > 0 && w <= 1024) return static_cast<unsigned>(w);
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

inline unsigned resolve_workers(unsigned requested) { return requested == 0 ? default_workers() : requested; }

/// Runs task(i) for i in [0, n) on up to `workers` threads. Tasks are handed
/// out in index order; the first exception is rethrown after all threads join.
template <typename Task>
void parallel_for(std::size_t n, unsigned workers, Task&& task) {
  workers = resolve_workers(workers);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::mutex mu;
  std::size_t next = 0;
  std::exception_ptr error;
  auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= n || error) return;
        i = next++;
      }
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(workers, n);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sqfree
