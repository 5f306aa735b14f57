#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lambdach {

/// Resolve a requested worker count; 0 means one per hardware thread.
inline unsigned resolve_threads(unsigned requested, std::size_t work_items) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, work_items)));
}

/// Evaluate fn(chunk) for every chunk index in [0, n_chunks) on up to
/// `threads` workers. Results come back indexed by chunk, so any reduction
/// done in index order is independent of the thread count. The first
/// exception thrown by a worker is rethrown on the calling thread.
template <class Result, class Fn>
std::vector<Result> map_chunks(std::size_t n_chunks, unsigned threads, Fn fn) {
  std::vector<Result> out(n_chunks);
  const unsigned workers = resolve_threads(threads, n_chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) out[c] = fn(c);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t c = next++; c < n_chunks; c = next++) {
      try {
        out[c] = fn(c);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n_chunks;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace lambdach
