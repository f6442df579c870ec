#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace onebit {

// Trials per work item. Fixed so that the reduction tree never depends on the
// number of threads.
inline constexpr std::uint64_t kTrialBlock = 2048;

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Evaluates `block_fn(begin, end)` over [0, n) split into kTrialBlock-sized
/// blocks and returns the partial results in block order. Callers fold the
/// partials sequentially, so the final value is independent of `threads`.
template <typename Partial, typename BlockFn>
std::vector<Partial> map_blocks(std::uint64_t n, int threads, BlockFn&& block_fn) {
  const std::uint64_t blocks = (n + kTrialBlock - 1) / kTrialBlock;
  std::vector<Partial> partials(blocks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        const std::uint64_t begin = b * kTrialBlock;
        partials[b] = block_fn(begin, std::min(n, begin + kTrialBlock));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
      }
    }
  };

  const int count = std::max(1, std::min<int>(resolve_threads(threads),
                                              static_cast<int>(std::max<std::uint64_t>(blocks, 1))));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return partials;
}

} // namespace onebit
