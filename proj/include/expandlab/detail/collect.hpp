#pragma once

// Parallel distinct-collection engine shared by every set-valued operation.
//
// The row space [0, rows) is split into contiguous slices, one per worker.
// Each worker appends candidates to a buffer, sorts and dedups it in chunks,
// and folds the chunks into a small stack of sorted runs. The per-worker
// results are then union-merged. Since the output is the sorted set of all
// candidates, it does not depend on how rows were partitioned.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "expandlab/finite_set.hpp"

namespace expandlab::detail {

inline constexpr std::size_t kChunkCandidates = std::size_t{1} << 20;
inline constexpr std::size_t kMinWorkerCandidates = std::size_t{1} << 14;

void sort_unique(std::vector<Rational>& values);
std::vector<Rational> merge_union(const std::vector<Rational>& a, const std::vector<Rational>& b);
[[noreturn]] void throw_budget(std::size_t count, const Budget& budget);

class RunStack {
 public:
  explicit RunStack(const Budget& budget) : budget_(budget) {}

  /// Takes an unsorted candidate buffer, leaves it empty.
  void absorb(std::vector<Rational>& candidates);
  std::vector<Rational> finish();

 private:
  void push(std::vector<Rational> run);

  Budget budget_;
  std::vector<std::vector<Rational>> runs_;
};

std::vector<Rational> merge_all(std::vector<std::vector<Rational>> parts, const Budget& budget);

/// RowFn: void(std::size_t row, std::vector<Rational>& out), appends the
/// candidates generated by one row. Must be safe to call concurrently for
/// distinct rows. `row_cost` estimates candidates per row; small jobs stay
/// on the calling thread.
template <class RowFn>
std::vector<Rational> collect_distinct(std::size_t rows, const RowFn& row_fn, const Budget& budget,
                                       std::size_t row_cost = kMinWorkerCandidates) {
  auto run_slice = [&](std::size_t begin, std::size_t end) {
    RunStack stack(budget);
    std::vector<Rational> buffer;
    for (std::size_t row = begin; row < end; ++row) {
      row_fn(row, buffer);
      if (buffer.size() >= kChunkCandidates) stack.absorb(buffer);
    }
    stack.absorb(buffer);
    return stack.finish();
  };

  std::size_t by_work = std::max<std::size_t>(1, rows * row_cost / kMinWorkerCandidates);
  std::size_t workers = std::min<std::size_t>({max_workers(), rows, by_work});
  if (workers <= 1) return run_slice(0, rows);

  std::vector<std::vector<Rational>> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = rows * w / workers;
    std::size_t end = rows * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        parts[w] = run_slice(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return merge_all(std::move(parts), budget);
}

}  // namespace expandlab::detail
