#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ww {

/// Worker count used by parallel_map. Zero restores the hardware default.
void set_thread_count(unsigned count);
[[nodiscard]] unsigned thread_count();

/// Evaluates fn(i) for i in [0, n) and returns the results in index order.
///
/// Work is handed out through an atomic counter, so the schedule varies, but
/// every slot is written by exactly one call and any reduction done by the
/// caller over the result vector is independent of the thread count. If
/// several calls throw, the exception of the lowest index is rethrown.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Pairwise (tree) summation; the result depends only on the input order.
[[nodiscard]] double pairwise_sum(const double* data, std::size_t n);

}  // namespace ww
