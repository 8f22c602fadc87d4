#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace brs::internal {

// Runs fn(i) for i in [0, n) across a few threads.  Exceptions are rethrown
// for the smallest offending index, keeping failures deterministic
// regardless of scheduling.
inline void parallel_for_indexed(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (threads > n) threads = static_cast<unsigned>(n);

  struct Failure {
    std::size_t index = SIZE_MAX;
    std::exception_ptr error;
  };
  std::vector<Failure> failures(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < n; i += threads) {
        try {
          fn(i);
        } catch (...) {
          failures[t] = Failure{i, std::current_exception()};
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  const Failure* first = nullptr;
  for (const auto& f : failures)
    if (f.error && (!first || f.index < first->index)) first = &f;
  if (first) std::rethrow_exception(first->error);
}

}  // namespace brs::internal
