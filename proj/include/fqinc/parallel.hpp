#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace fqinc {

[[nodiscard]] inline unsigned worker_count(std::size_t work_items, std::size_t grain = 1024) {
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const std::size_t wanted = std::max<std::size_t>(1, work_items / std::max<std::size_t>(1, grain));
  return static_cast<unsigned>(std::min<std::size_t>(hw, wanted));
}

/// Runs body(begin, end, worker) over contiguous chunks of [0, n). Chunk
/// boundaries depend only on n and the worker count; callers that reduce
/// with integer sums, max or logical or get identical results either way.
template <class Body>
void parallel_chunks(std::size_t n, Body&& body, std::size_t grain = 1024) {
  const unsigned workers = worker_count(n, grain);
  if (workers <= 1) {
    body(std::size_t{0}, n, 0U);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t step = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(n, w * step);
    const std::size_t end = std::min(n, begin + step);
    threads.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Sum of term(i) over [0, n).
template <class Term>
[[nodiscard]] std::uint64_t parallel_sum(std::size_t n, Term&& term, std::size_t grain = 1024) {
  std::vector<std::uint64_t> partial(worker_count(n, grain), 0);
  parallel_chunks(
      n,
      [&](std::size_t begin, std::size_t end, unsigned w) {
        std::uint64_t acc = 0;
        for (std::size_t i = begin; i < end; ++i) acc += term(i);
        partial[w] = acc;
      },
      grain);
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

}  // namespace fqinc
