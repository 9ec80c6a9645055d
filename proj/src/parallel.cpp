#include "helewave/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef HELEWAVE_HAVE_OPENMP
#include <omp.h>
#endif

namespace helewave::parallel {

int threads() {
#ifdef HELEWAVE_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef HELEWAVE_HAVE_OPENMP
  if (n < 1) n = omp_get_num_procs();
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int configure_from_env() {
  if (const char* env = std::getenv("HELEWAVE_THREADS")) {
    try {
      set_threads(std::stoi(env));
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return threads();
}

bool openmp_enabled() {
#ifdef HELEWAVE_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace helewave::parallel
