#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace probnet {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

inline std::size_t block_count(std::size_t count, std::size_t block_size) {
  return count == 0 ? 0 : (count + block_size - 1) / block_size;
}

// Runs fn(block_index, first, last) over [0, count) split into fixed-size
// blocks. The decomposition depends only on (count, block_size), never on the
// thread count, so a caller that stores one partial result per block and
// combines them in ascending block index gets bit-identical output for any
// number of threads.
template <class Fn>
void for_each_block(std::size_t count, std::size_t block_size, unsigned threads, Fn&& fn) {
  const std::size_t nblocks = block_count(count, block_size);
  if (nblocks == 0) return;
  const unsigned nthreads =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), nblocks));

  auto run = [&](std::size_t b) {
    const std::size_t first = b * block_size;
    fn(b, first, std::min(count, first + block_size));
  };

  if (nthreads <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run(b);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> error_claimed{false};
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      if (error_claimed.load(std::memory_order_relaxed)) return;
      const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= nblocks) return;
      try {
        run(b);
      } catch (...) {
        if (!error_claimed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(nthreads - 1);
  for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace probnet
