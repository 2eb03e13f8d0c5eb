#pragma once

// Runs independent tasks (one integration per (method, h) or (R, h) pair)
// either serially or across OpenMP threads. The serial path is the
// reference; tests check the parallel path reproduces it bit for bit. Tasks
// share no mutable state, so results never depend on scheduling.

#include <cstddef>
#include <exception>
#include <optional>
#include <string_view>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dgm {

enum class Execution { Serial, Parallel };

std::string_view to_string(Execution e) noexcept;

/// Whether the library was compiled with OpenMP.
bool parallel_available() noexcept;
/// Number of threads a parallel sweep would use (1 without OpenMP).
int sweep_threads() noexcept;

/// Result slot of one task: either a value or the exception it threw.
template <class T>
struct SweepSlot {
  std::optional<T> value;
  std::exception_ptr error;

  bool ok() const noexcept { return value.has_value(); }
  const T& get() const {
    if (error) std::rethrow_exception(error);
    return *value;
  }
};

template <class T, class Fn>
std::vector<SweepSlot<T>> run_sweep_serial(std::size_t n, Fn&& fn) {
  std::vector<SweepSlot<T>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    try {
      out[k].value.emplace(fn(k));
    } catch (...) {
      out[k].error = std::current_exception();
    }
  }
  return out;
}

template <class T, class Fn>
std::vector<SweepSlot<T>> run_sweep_parallel(std::size_t n, Fn&& fn) {
  std::vector<SweepSlot<T>> out(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < count; ++k) {
    // Exceptions must not cross the parallel region boundary.
    try {
      out[k].value.emplace(fn(static_cast<std::size_t>(k)));
    } catch (...) {
      out[k].error = std::current_exception();
    }
  }
  return out;
}

template <class T, class Fn>
std::vector<SweepSlot<T>> run_sweep(std::size_t n, Fn&& fn, Execution exec) {
  if (exec == Execution::Parallel) return run_sweep_parallel<T>(n, fn);
  return run_sweep_serial<T>(n, fn);
}

}  // namespace dgm
