#include "dicke/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef DICKE_HAVE_OPENMP
#include <omp.h>
#endif

namespace dicke::parallel {

int configure_from_env() {
  if (const char* value = std::getenv("DICKE_THREADS")) {
    try {
      const int threads = std::stoi(value);
#ifdef DICKE_HAVE_OPENMP
      if (threads > 0) omp_set_num_threads(threads);
#else
      (void)threads;
#endif
    } catch (const std::exception&) {
      // non-numeric values are ignored
    }
  }
  return max_threads();
}

int max_threads() {
#ifdef DICKE_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace dicke::parallel
