#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace helmnorm {

// Runs fn(i) for i in [0, n), splitting the range over up to `threads` workers.
template <typename Fn>
void parallel_for(long n, int threads, Fn&& fn) {
  const long workers = std::clamp<long>(threads, 1, std::max<long>(1, n));
  if (workers == 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (long w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (long i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace helmnorm
