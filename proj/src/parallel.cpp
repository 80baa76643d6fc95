#include "ymflow/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace ymflow {

int worker_count() {
  static const int count = [] {
    if (const char* env = std::getenv("YMFLOW_THREADS")) {
      try {
        const int v = std::stoi(env);
        if (v >= 1) return v;
      } catch (...) {
      }
    }
    return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  }();
  return count;
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  constexpr std::size_t kMinChunk = 4096;
  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(worker_count()), (n + kMinChunk - 1) / kMinChunk);
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t b = w * chunk, e = std::min(n, b + chunk);
    if (b < e) pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  fn(0, std::min(n, chunk));
}

}  // namespace ymflow
