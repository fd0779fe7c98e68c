#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ecbits {

struct RunOptions {
  // 0 means std::thread::hardware_concurrency().
  unsigned jobs = 0;
  // Upper bound on elementary terms for exhaustive evaluations.
  std::uint64_t work_budget = 4'000'000'000ULL;
};

inline unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, n) into a fixed number of contiguous chunks (independent of
/// the worker count) and evaluates fn(begin, end) for each. Results come back
/// in chunk order, so folding them left to right gives the same value for
/// any number of workers.
template <class T, class Fn>
std::vector<T> map_chunks(std::size_t n, unsigned jobs, Fn fn) {
  constexpr std::size_t kChunks = 64;
  const std::size_t chunks = std::min<std::size_t>(kChunks, std::max<std::size_t>(n, 1));
  std::vector<T> results(chunks);
  auto bounds = [&](std::size_t i) { return std::pair{n * i / chunks, n * (i + 1) / chunks}; };

  const unsigned workers = std::min<unsigned>(resolve_jobs(jobs), static_cast<unsigned>(chunks));
  if (workers <= 1) {
    for (std::size_t i = 0; i < chunks; ++i) {
      auto [b, e] = bounds(i);
      results[i] = fn(b, e);
    }
    return results;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < chunks; i += workers) {
          auto [b, e] = bounds(i);
          results[i] = fn(b, e);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace ecbits
