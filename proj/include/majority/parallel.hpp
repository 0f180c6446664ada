#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace majority {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Work is split
// into contiguous blocks, so callers that write into slot i of a presized
// vector get results independent of the job count. If several calls throw,
// the exception from the smallest i is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(jobs, count);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::size_t> failed_at(workers, count);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      const std::size_t lo = count * w / workers;
      const std::size_t hi = count * (w + 1) / workers;
      for (std::size_t i = lo; i < hi; ++i) {
        try {
          fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
          failed_at[w] = i;
          return;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  for (std::size_t w = 0; w < workers; ++w)
    if (errors[w]) std::rethrow_exception(errors[w]);
}

}  // namespace majority
