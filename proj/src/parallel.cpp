#include "rih/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rih {

namespace {
std::atomic<int> g_override{0};
}

int thread_count() {
  if (int o = g_override.load(); o > 0) return o;
  if (const char* env = std::getenv("RIH_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void set_thread_count(int n) { g_override.store(n > 0 ? n : 0); }

void parallel_ranges(std::int64_t total, const std::function<void(std::int64_t, std::int64_t)>& fn,
                     std::int64_t min_chunk) {
  if (total <= 0) return;
  const std::int64_t workers =
      std::min<std::int64_t>(thread_count(), std::max<std::int64_t>(1, total / std::max<std::int64_t>(1, min_chunk)));
  if (workers <= 1) {
    fn(0, total);
    return;
  }
  const std::int64_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex mu;
  for (std::int64_t w = 0; w < workers; ++w) {
    const std::int64_t b = w * chunk;
    const std::int64_t e = std::min(total, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, b, e] {
      try {
        fn(b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace rih
