#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace critising::detail {

// Runs fn(chunk) for chunk in [0, num_chunks) on up to `threads` workers.
// Callers store per-chunk results and combine them in chunk order, which
// keeps results independent of the thread count.
template <class Fn>
void for_each_chunk(int num_chunks, int threads, Fn&& fn) {
  const int workers = std::clamp(threads, 1, std::max(num_chunks, 1));
  if (workers == 1) {
    for (int c = 0; c < num_chunks; ++c) fn(c);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int c = next++; c < num_chunks; c = next++) {
        try {
          fn(c);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace critising::detail
