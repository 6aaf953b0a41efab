#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sphconv {

// Runs fn(i) for i in [0, n), optionally across threads (0 = hardware count).
// Callers write to disjoint output regions per index, so results are
// identical for any worker count.
template <typename Fn>
void parallel_for(int n, Fn&& fn, int threads = 0) {
  if (n <= 0) return;
  int t = threads > 0 ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  if (t > n) t = n;
  if (t == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      next.store(n);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(t));
  for (int i = 0; i < t; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace sphconv
