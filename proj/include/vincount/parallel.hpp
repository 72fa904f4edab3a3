#pragma once
//
// Deterministic work partitioning. Chunk boundaries depend only on the
// problem size, never on the worker count, and chunk results are merged
// in index order, so every reduction built on this is bit-identical
// across worker counts and runs.

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vincount {

// Applies chunk_fn(begin, end, chunk_index) over [0, n) split into fixed
// chunks and returns the per-chunk results indexed by chunk.
template <class Partial, class ChunkFn>
std::vector<Partial> run_chunked(std::uint64_t n, std::uint64_t chunk_size, int workers,
                                 ChunkFn&& chunk_fn) {
  if (chunk_size == 0) chunk_size = 1;
  const std::uint64_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<Partial> partials(n_chunks);
  if (n_chunks == 0) return partials;

  auto run_one = [&](std::uint64_t c) {
    const std::uint64_t b = c * chunk_size;
    const std::uint64_t e = std::min(n, b + chunk_size);
    partials[c] = chunk_fn(b, e, c);
  };

  std::uint64_t usable = workers < 1 ? 1 : static_cast<std::uint64_t>(workers);
  if (usable > n_chunks) usable = n_chunks;
  if (usable == 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) run_one(c);
    return partials;
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) return;
      try {
        run_one(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(usable);
  for (std::uint64_t i = 0; i < usable; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return partials;
}

}  // namespace vincount
