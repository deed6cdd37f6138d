#include "txnet/parallel.hpp"

#include <algorithm>
#include <cstdlib>

namespace txnet {

std::size_t worker_count() {
  std::size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("TXNET_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
  }
  return n;
}

void parallel_blocks(std::size_t n, std::size_t max_blocks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t blocks = std::max<std::size_t>(1, std::min(max_blocks, n));
  const std::size_t chunk = (n + blocks - 1) / blocks;

  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin < end) fn(b, begin, end);
  };

  const std::size_t threads = std::min(worker_count(), blocks);
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= blocks) return;
        run_block(b);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace txnet
