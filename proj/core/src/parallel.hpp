#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace xmap::detail {

// Runs fn(lo, hi, worker) over [first, last] in ascending blocks handed out
// from a shared counter. If any block throws, the exception from the lowest
// block is rethrown after all workers join, so failures are reported the
// same way regardless of scheduling.
template <class Fn>
void for_each_block(std::uint64_t first, std::uint64_t last,
                    std::uint64_t block_size, unsigned workers, Fn&& fn) {
  if (first > last) return;
  workers = std::max(1u, workers);
  block_size = std::max<std::uint64_t>(1, block_size);
  const std::uint64_t blocks = (last - first) / block_size + 1;
  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::uint64_t error_block = blocks;

  auto body = [&](unsigned worker) {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      const std::uint64_t lo = first + b * block_size;
      const std::uint64_t hi = std::min(last, lo + block_size - 1);
      try {
        fn(lo, hi, worker);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (b < error_block) {
          error_block = b;
          error = std::current_exception();
        }
      }
    }
  };

  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace xmap::detail
