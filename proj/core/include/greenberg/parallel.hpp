#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace greenberg {

/// Splits [0, total) into a fixed number of chunks and runs `body(chunk, lo, hi)`
/// on up to `workers` threads. The chunk count does not depend on the worker
/// count, and callers merge per-chunk results in chunk order, so output is
/// identical whether one thread or many ran the scan.
inline void parallel_chunks(std::size_t total, unsigned workers,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  constexpr std::size_t kChunks = 64;
  if (total == 0) return;
  const std::size_t nchunks = total < kChunks ? total : kChunks;
  const std::size_t step = (total + nchunks - 1) / nchunks;

  if (workers <= 1 || nchunks == 1) {
    for (std::size_t c = 0; c < nchunks; ++c) {
      const std::size_t lo = c * step;
      const std::size_t hi = std::min(total, lo + step);
      if (lo < hi) body(c, lo, hi);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      const std::size_t lo = c * step;
      const std::size_t hi = std::min(total, lo + step);
      if (lo < hi) body(c, lo, hi);
    }
  };
  std::vector<std::thread> pool;
  const unsigned nthreads = std::min<unsigned>(workers, static_cast<unsigned>(nchunks));
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
}

}  // namespace greenberg
