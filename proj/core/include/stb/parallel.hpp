#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace stb {

// Worker cap from STB_THREADS; unset, empty, unparsable or 0 means
// hardware concurrency.
unsigned thread_count_from_env();

unsigned resolve_threads(unsigned requested);

// Runs fn(i) for i in [begin, end) split into contiguous chunks across at most
// `threads` workers. The first exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_for(int begin, int end, unsigned threads, Fn&& fn) {
  const int n = end - begin;
  if (n <= 0) return;
  const unsigned workers =
      std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(n));
  if (workers <= 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const int lo = begin + static_cast<int>(static_cast<long long>(n) * w / workers);
    const int hi = begin + static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (int i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace stb
