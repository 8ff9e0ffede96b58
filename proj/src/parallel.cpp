#include "dynirr/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dynirr {

int resolve_jobs(int jobs) {
#ifdef _OPENMP
  if (jobs <= 0) return omp_get_max_threads();
  return jobs;
#else
  (void)jobs;
  return 1;
#endif
}

}  // namespace dynirr
