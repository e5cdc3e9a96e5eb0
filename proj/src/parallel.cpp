#include "cvp/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace cvp {

namespace {
int default_threads = -1;
}

void set_thread_count(int threads) {
  if (default_threads < 0) default_threads = omp_get_max_threads();
  omp_set_num_threads(threads > 0 ? threads : default_threads);
}

int thread_count() { return omp_get_max_threads(); }

int threads_from_environment() {
  const char* v = std::getenv("CVP_THREADS");
  if (!v || !*v) return 0;
  try {
    const int t = std::stoi(v);
    return t > 0 ? t : 0;
  } catch (...) {
    return 0;
  }
}

}  // namespace cvp
