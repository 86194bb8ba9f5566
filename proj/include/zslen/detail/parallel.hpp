#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace zslen::detail {

/// Runs task(i) for i in [0, n) on up to `threads` workers and returns the
/// results in index order. Once a result satisfies `stop`, tasks with a larger
/// index that have not started yet are skipped (their slot stays empty); all
/// tasks with index <= the smallest stopping index always run.
template <class Task, class Stop>
auto ordered_parallel(std::size_t n, unsigned threads, Task task, Stop stop)
    -> std::vector<std::optional<std::invoke_result_t<Task&, std::size_t>>> {
  using R = std::invoke_result_t<Task&, std::size_t>;
  std::vector<std::optional<R>> out(n);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> cutoff{std::numeric_limits<std::size_t>::max()};
  std::atomic<std::size_t> first_stop{std::numeric_limits<std::size_t>::max()};
  std::exception_ptr error;
  std::size_t error_index = std::numeric_limits<std::size_t>::max();
  std::mutex error_mu;

  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      if (i > cutoff.load()) continue;
      try {
        R r = task(i);
        bool halt = stop(r);
        out[i].emplace(std::move(r));
        if (halt) {
          std::size_t cur = cutoff.load();
          while (i < cur && !cutoff.compare_exchange_weak(cur, i)) {
          }
          cur = first_stop.load();
          while (i < cur && !first_stop.compare_exchange_weak(cur, i)) {
          }
        }
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        std::size_t cur = cutoff.load();
        while (i < cur && !cutoff.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };

  unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  // A failure past the first stopping task does not affect the outcome.
  if (error && error_index < first_stop.load()) std::rethrow_exception(error);
  for (std::size_t i = first_stop.load(); i < n; ++i)
    if (i != first_stop.load()) out[i].reset();
  return out;
}

template <class Task>
auto ordered_parallel(std::size_t n, unsigned threads, Task task) {
  using R = std::invoke_result_t<Task&, std::size_t>;
  auto opt = ordered_parallel(n, threads, std::move(task), [](const R&) { return false; });
  std::vector<R> out;
  out.reserve(n);
  for (auto& o : opt) out.push_back(std::move(*o));
  return out;
}

}  // namespace zslen::detail
