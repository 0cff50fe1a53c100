#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spatent::detail {

// Runs fn(i) for i in [0, count) on up to `workers` threads. Each index is
// processed exactly once; callers write results to per-index slots, so the
// outcome does not depend on scheduling. The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn)
{
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    pool.emplace_back(body);
  }
  body();
  pool.clear();
  if (error) {
    std::rethrow_exception(error);
  }
}

}  // namespace spatent::detail
