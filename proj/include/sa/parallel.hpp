#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace sa {

// Number of workers to use when the caller passed 0 (= auto).
inline unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Splits [0, total) into contiguous chunks and runs body(chunk_index, begin,
// end) on each, possibly concurrently. Chunk boundaries depend only on total
// and the worker count, so workers that write results indexed by position (or
// into per-chunk slots merged in chunk order) stay deterministic.
inline void run_chunks(std::uint64_t total, unsigned jobs,
                       const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_jobs(jobs), total ? total : 1));
  if (workers <= 1) {
    body(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint64_t step = total / workers, extra = total % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + step + (w < extra ? 1 : 0);
    pool.emplace_back([&, w, begin, end] {
      try {
        body(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace sa
