#ifndef SGFRAME_PARALLEL_HPP
#define SGFRAME_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sgf {

/// Process-wide cap on worker threads; 0 means hardware concurrency.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs body(i) for i in [0, count). Work is split into contiguous chunks;
/// results must be written to per-index slots so the outcome does not depend
/// on scheduling. If any body throws, the exception with the lowest index is
/// rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, std::size_t min_chunk = 64) {
  unsigned threads = max_threads();
  if (count < 2 * min_chunk || threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, (count + min_chunk - 1) / min_chunk));
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::size_t> error_index(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          body(i);
        } catch (...) {
          errors[t] = std::current_exception();
          error_index[t] = i;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  std::size_t best = count;
  std::exception_ptr first;
  for (unsigned t = 0; t < threads; ++t) {
    if (errors[t] && error_index[t] < best) {
      best = error_index[t];
      first = errors[t];
    }
  }
  if (first) std::rethrow_exception(first);
}

} // namespace sgf

#endif // SGFRAME_PARALLEL_HPP
