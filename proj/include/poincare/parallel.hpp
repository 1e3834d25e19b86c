#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace poincare {

inline unsigned thread_count() {
  if (const char* env = std::getenv("POINCARE_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return unsigned(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [0, n). Each index must write only its own output
/// slots so results are identical for any thread count.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = thread_count()) {
  if (n == 0) return;
  threads = std::min<std::size_t>(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

} // namespace poincare
