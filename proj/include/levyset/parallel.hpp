#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace levyset {

// Per-rep work writes only into rep-indexed slots, so the schedule cannot
// change results; reductions happen afterwards in fixed index order.

template <class F>
void run_reps_serial(long long reps, F&& fn) {
  for (long long rep = 0; rep < reps; ++rep) fn(rep);
}

template <class F>
void run_reps_parallel(long long reps, int workers, F&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers)
  for (long long rep = 0; rep < reps; ++rep) fn(rep);
#else
  (void)workers;
  run_reps_serial(reps, fn);
#endif
}

template <class F>
void run_reps(long long reps, int workers, F&& fn) {
  if (workers <= 1) {
    run_reps_serial(reps, fn);  // serial reference path
  } else {
    run_reps_parallel(reps, workers, fn);
  }
}

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace levyset
