#include "maeigen/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace maeigen {

int worker_thread_count() {
  static const int cached = [] {
    int n = 0;
    if (const char* env = std::getenv("MAEIGEN_THREADS")) n = std::atoi(env);
    if (n <= 0) n = int(std::thread::hardware_concurrency());
    return std::max(1, n);
  }();
  return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const int workers = worker_thread_count();
  if (workers == 1 || n < 4096) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(workers, (n + 4095) / 4096);
  const std::size_t chunk = (n + nthreads - 1) / nthreads;
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

} // namespace maeigen
