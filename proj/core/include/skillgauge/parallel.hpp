#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace skillgauge {

/// Runs fn(begin, end) over disjoint chunks of [0, n) on up to `threads`
/// workers. Callers must write results into per-index slots (no shared
/// accumulators) so the outcome is identical for any worker count.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 2048) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    const std::size_t end = std::min(begin + chunk, n);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace skillgauge
