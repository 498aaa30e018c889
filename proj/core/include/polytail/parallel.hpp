#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace polytail {

// Worker count: explicit setting wins, then POLYTAIL_THREADS, then hardware.
int effective_threads();
void set_threads(int n);  // n <= 0 restores the default

// Deterministic block map-reduce: [0,n) is cut into fixed blocks, each block
// is reduced independently (any thread), and block results are combined in
// block-index order. Output is invariant to the thread count.
template <typename Acc>
Acc block_reduce(std::size_t n, std::size_t block_size, Acc init,
                 const std::function<Acc(std::size_t, std::size_t)>& block_fn,
                 const std::function<Acc(Acc, Acc)>& combine) {
  if (n == 0) return init;
  if (block_size == 0) block_size = 1;
  const std::size_t n_blocks = (n + block_size - 1) / block_size;
  const int workers = std::min<std::size_t>(effective_threads(), n_blocks);

  std::vector<Acc> partial(n_blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) {
      const std::size_t lo = b * block_size;
      partial[b] = block_fn(lo, std::min(lo + block_size, n));
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto run = [&] {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= n_blocks) break;
        const std::size_t lo = b * block_size;
        partial[b] = block_fn(lo, std::min(lo + block_size, n));
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }

  Acc acc = std::move(init);
  for (std::size_t b = 0; b < n_blocks; ++b)
    acc = combine(std::move(acc), std::move(partial[b]));
  return acc;
}

}  // namespace polytail
