#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace convexreg {

// Number of OpenMP threads used by the parallel kernels. Defaults to the
// OpenMP maximum, capped by the CONVEXREG_THREADS environment variable.
int thread_limit();

// Overrides the cap for the rest of the process (0 restores the default).
void set_thread_limit(int threads);

// Runs body(i) for i in [0, n) across threads. Exceptions are collected per
// index and the one with the lowest index is rethrown after the loop, so the
// error reported does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body)
{
  if (n == 0) {
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  bool any_error = false;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_limit()) reduction(|| : any_error)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
      any_error = true;
    }
  }
  if (any_error) {
    for (auto& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  }
}

} // namespace convexreg
