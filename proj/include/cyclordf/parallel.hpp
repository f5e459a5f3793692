#pragma once

// Index-parallel map used by every sweep and Monte Carlo kernel.
//
// Each kernel has two routes: `serial_map` is the reference loop kept for
// testing, `parallel_map` runs the same body under OpenMP. Results land in
// index order and any exception is rethrown for the lowest failing index, so
// both routes are observably identical.

#include <cstddef>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

#include <omp.h>

namespace cyclordf {

/// Worker count resolution: explicit request > CYCLORDF_JOBS > hardware.
/// A request of 0 means "not specified".
int resolve_jobs(int requested = 0);

template <class F>
auto serial_map(std::size_t n, F&& fn) {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

template <class F>
auto parallel_map(std::size_t n, F&& fn, int jobs) {
  using R = std::invoke_result_t<F&, std::size_t>;
  if (jobs <= 1 || n <= 1) return serial_map(n, fn);

  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      slots[i].emplace(fn(static_cast<std::size_t>(i)));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Side-effect-only variant for kernels that write into disjoint slices.
template <class F>
void parallel_for(std::size_t n, F&& fn, int jobs) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace cyclordf
