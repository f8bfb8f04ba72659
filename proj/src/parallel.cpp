#include "runge/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace runge {

int thread_count() {
  if (const char* s = std::getenv("RUNGE_THREADS")) {
    int v = std::atoi(s);
    if (v >= 1) return v;
  }
  unsigned h = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(h, 1u, 8u));
}

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
  int T = std::min<int>(thread_count(), static_cast<int>(n));
  if (T <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < T; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace runge
