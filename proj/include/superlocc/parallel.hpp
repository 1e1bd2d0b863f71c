#pragma once

// Include this instead of <omp.h> so the library still builds without OpenMP.

#if defined(_OPENMP)
#include <omp.h>
namespace superlocc {
constexpr bool use_omp = true;
}  // namespace superlocc
#else
namespace superlocc {
constexpr bool use_omp = false;
}  // namespace superlocc
inline int omp_get_thread_num() { return 0; }
inline int omp_get_max_threads() { return 1; }
#endif

namespace superlocc {

/// Worker count for the parallel kernels. 0 means the OpenMP default.
/// Results never depend on this value.
struct Execution {
  int workers = 0;

  int threads() const { return workers > 0 ? workers : omp_get_max_threads(); }
};

}  // namespace superlocc
