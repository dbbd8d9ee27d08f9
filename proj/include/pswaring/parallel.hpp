#pragma once

#include <exception>
#include <utility>

#include <omp.h>

namespace pswaring {

inline int default_jobs() { return omp_get_max_threads(); }

// Run fn(0..n-1), sharding across an OpenMP pool when jobs > 1. Callers store
// results by index, so the gathered output is identical for any job count.
// jobs == 1 takes the plain serial path (the reference used in tests).
template <class Fn>
void run_indexed_jobs(int n, int jobs, Fn&& fn) {
  if (n <= 0) return;
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace pswaring
